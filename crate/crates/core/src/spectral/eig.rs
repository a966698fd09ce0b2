//! Dense symmetric eigensolver: Householder reduction to tridiagonal form
//! followed by the implicit-shift QL iteration, after the classic
//! EISPACK/Handbook routines (TRED2/TQL2). Eigenvalues-only and
//! eigenvector-accumulating variants share the same reduction.

use alloc::vec;
use alloc::vec::Vec;

use crate::dense::DenseMatrix;
use crate::math::{abs, hypot, sign, sqrt};

const MAX_QL_ITERATIONS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum EigenError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("QL iteration failed to converge for eigenvalue index {0}")]
    NoConvergence(usize),
}

/// All eigenvalues of a symmetric matrix, ascending. Consumes the matrix
/// (the reduction works in place on the lower triangle).
pub fn symmetric_eigenvalues(mut a: DenseMatrix) -> Result<Vec<f64>, EigenError> {
    if a.rows() != a.cols() {
        return Err(EigenError::NotSquare);
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut a, &mut d, &mut e, false);
    ql_implicit(&mut d, &mut e, None)?;
    d.sort_unstable_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(d)
}

/// Eigenvalues (ascending) and the matching orthonormal eigenvectors as the
/// columns of the returned matrix.
pub fn symmetric_eigen(a: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix), EigenError> {
    if a.rows() != a.cols() {
        return Err(EigenError::NotSquare);
    }
    let n = a.rows();
    let mut work = a.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut work, &mut d, &mut e, true);
    ql_implicit(&mut d, &mut e, Some(&mut work))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("eigenvalues are finite"));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            vectors.set(k, new, work.get(k, old));
        }
    }
    Ok((values, vectors))
}

/// Householder reduction of a symmetric matrix (lower triangle) to
/// tridiagonal form. With `vectors` the orthogonal transform accumulates in
/// `a`; without, only `d` (diagonal) and `e` (subdiagonal) are produced.
///
/// The symmetric matrix-vector product is computed in one sweep over the
/// lower triangle, reading rows contiguously, so large reductions are not
/// dominated by column strides.
#[allow(clippy::needless_range_loop)] // index-driven translation of TRED2
fn tridiagonalize(a: &mut DenseMatrix, d: &mut [f64], e: &mut [f64], vectors: bool) {
    let n = d.len();
    let mut u = vec![0.0; n];
    let mut p = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += abs(a.get(i, k));
            }
            if scale == 0.0 {
                e[i] = a.get(i, l);
            } else {
                for k in 0..=l {
                    let v = a.get(i, k) / scale;
                    a.set(i, k, v);
                    h += v * v;
                }
                let f = a.get(i, l);
                let g = if f >= 0.0 { -sqrt(h) } else { sqrt(h) };
                e[i] = scale * g;
                h -= f * g;
                a.set(i, l, f - g);
                u[..=l].copy_from_slice(&a.row(i)[..=l]);
                if vectors {
                    for (j, &uj) in u[..=l].iter().enumerate() {
                        a.set(j, i, uj / h);
                    }
                }

                // p = A u over the leading (l+1)-block, lower triangle only.
                p[..=l].iter_mut().for_each(|x| *x = 0.0);
                for j in 0..=l {
                    let uj = u[j];
                    let row = &a.row(j)[..j];
                    let mut acc = 0.0;
                    for (k, &ajk) in row.iter().enumerate() {
                        acc += ajk * u[k];
                        p[k] += ajk * uj;
                    }
                    p[j] += acc + a.get(j, j) * uj;
                }

                let mut f_acc = 0.0;
                for j in 0..=l {
                    e[j] = p[j] / h;
                    f_acc += e[j] * u[j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    e[j] -= hh * u[j];
                }

                // Rank-2 update A <- A - u e^T - e u^T on the lower triangle.
                for j in 0..=l {
                    let f = u[j];
                    let g = e[j];
                    let row = a.row_mut(j);
                    for k in 0..=j {
                        row[k] -= f * e[k] + g * u[k];
                    }
                }
            }
        } else {
            e[i] = a.get(i, l);
        }
        d[i] = h;
    }
    e[0] = 0.0;
    if !vectors {
        for (i, di) in d.iter_mut().enumerate() {
            *di = a.get(i, i);
        }
        return;
    }
    d[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += a.get(i, k) * a.get(k, j);
                }
                for k in 0..i {
                    let v = a.get(k, j) - g * a.get(k, i);
                    a.set(k, j, v);
                }
            }
        }
        d[i] = a.get(i, i);
        a.set(i, i, 1.0);
        for j in 0..i {
            a.set(j, i, 0.0);
            a.set(i, j, 0.0);
        }
    }
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix
/// (diagonal `d`, subdiagonal `e[1..]`). Optionally accumulates the
/// rotations into the columns of `z`.
fn ql_implicit(
    d: &mut [f64],
    e: &mut [f64],
    mut z: Option<&mut DenseMatrix>,
) -> Result<(), EigenError> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Find the first negligible subdiagonal element at or after l.
            let mut m = l;
            while m + 1 < n {
                let dd = abs(d[m]) + abs(d[m + 1]);
                if abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(EigenError::NoConvergence(l));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + sign(r, g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p_shift = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p_shift;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p_shift;
                r = (d[i] - g) * s + 2.0 * c * b;
                p_shift = s * r;
                d[i + 1] = g + p_shift;
                g = c * r - b;
                if let Some(zm) = z.as_deref_mut() {
                    for k in 0..n {
                        f = zm.get(k, i + 1);
                        zm.set(k, i + 1, s * zm.get(k, i) + c * f);
                        zm.set(k, i, c * zm.get(k, i) - s * f);
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p_shift;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
