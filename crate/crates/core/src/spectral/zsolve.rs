//! Complex LU factorization with partial pivoting, for the solve-based
//! Stieltjes backend. `L - zI` is complex symmetric, not Hermitian, so the
//! factorization is a general one.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ZSolveError {
    #[error("matrix is numerically singular at column {0}")]
    Singular(usize),
}

#[derive(Debug)]
pub(crate) struct ZLu {
    n: usize,
    lu: Vec<Complex64>,
    pivots: Vec<usize>,
}

impl ZLu {
    /// Factor a dense row-major complex matrix in place.
    pub(crate) fn factor(mut a: Vec<Complex64>, n: usize) -> Result<Self, ZSolveError> {
        debug_assert_eq!(a.len(), n * n);
        let mut pivots = vec![0usize; n];
        for k in 0..n {
            let mut best = k;
            let mut best_mag = a[k * n + k].norm_sqr();
            for i in k + 1..n {
                let mag = a[i * n + k].norm_sqr();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            if best_mag == 0.0 {
                return Err(ZSolveError::Singular(k));
            }
            pivots[k] = best;
            if best != k {
                for j in 0..n {
                    a.swap(k * n + j, best * n + j);
                }
            }
            let inv = Complex64::new(1.0, 0.0) / a[k * n + k];
            for i in k + 1..n {
                let lik = a[i * n + k] * inv;
                a[i * n + k] = lik;
                if lik != Complex64::new(0.0, 0.0) {
                    let (top, bottom) = a.split_at_mut(i * n);
                    let pivot_row = &top[k * n + k + 1..k * n + n];
                    let row = &mut bottom[k + 1..n];
                    for (r, &p) in row.iter_mut().zip(pivot_row) {
                        *r -= lik * p;
                    }
                }
            }
        }
        Ok(Self { n, lu: a, pivots })
    }

    /// Solve `A x = b` in place.
    pub(crate) fn solve(&self, b: &mut [Complex64]) {
        let n = self.n;
        debug_assert_eq!(b.len(), n);
        for k in 0..n {
            b.swap(k, self.pivots[k]);
        }
        for i in 1..n {
            let mut acc = b[i];
            let row = &self.lu[i * n..i * n + i];
            for (lij, bj) in row.iter().zip(b.iter()) {
                acc -= lij * bj;
            }
            b[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            let row = &self.lu[i * n + i + 1..(i + 1) * n];
            for (uij, bj) in row.iter().zip(b[i + 1..].iter()) {
                acc -= uij * bj;
            }
            b[i] = acc / self.lu[i * n + i];
        }
    }
}
