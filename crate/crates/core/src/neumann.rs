//! Truncated Neumann expansion of the Stieltjes transform on the domain
//! `D = { z in C_+ : |1 - z| > 1 }`.
//!
//! There `L - zI = (1 - z)(I - W/(1-z))` with `||W/(1-z)|| < 1`, so
//!
//! ```text
//! m_n(z) = (1/(1-z)) * sum_{k=0}^{K-1} (1-z)^{-k} (1/n) Tr(W^k)  +  eps,
//! |eps| <= |1-z|^{-K} / (|1-z| - 1),
//! ```
//!
//! a geometric tail bound that is uniform in `n`. Off-domain points
//! (`Im z > 0` but `|1 - z| <= 1`) are served only by the direct backends in
//! [`crate::spectral`]; no analytic-continuation shortcut is attempted.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::graph::{Graph, GraphError};
use crate::math;
use crate::numeric::{mean_std, powi, KahanComplex};
use crate::spectral::{moments_up_to, StieltjesEval, StieltjesMethod};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NeumannError {
    #[error("z outside Neumann domain |1-z|>1 (z = {re}+{im}i)")]
    OutsideDomain { re: f64, im: f64 },
    #[error("truncation level must satisfy K >= 1")]
    TruncationTooSmall,
    #[error(
        "required truncation level does not fit in 32 bits; move z away from the domain boundary"
    )]
    TruncationOutOfRange,
    #[error("tolerance must be positive, got {0:e}")]
    NonPositiveEps(f64),
    #[error("trace list too short: need {need} moments, have {have}")]
    NotEnoughTraces { need: usize, have: usize },
    #[error("trace sequence violates its invariants: {0}")]
    InvalidTraces(&'static str),
    #[error("empty ensemble: {0}")]
    EmptyEnsemble(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Membership in `D = { z : Im z > 0 and |1 - z| > 1 }`.
pub fn in_domain(z: Complex64) -> bool {
    z.im > 0.0 && math::cabs(Complex64::new(1.0, 0.0) - z) > 1.0
}

fn require_domain(z: Complex64) -> Result<f64, NeumannError> {
    if !in_domain(z) {
        return Err(NeumannError::OutsideDomain { re: z.re, im: z.im });
    }
    Ok(math::cabs(Complex64::new(1.0, 0.0) - z))
}

/// The uniform truncation bound `|1-z|^{-K} / (|1-z| - 1)`; strictly
/// decreasing in `K` and independent of the graph size.
pub fn tail_bound(z: Complex64, k: u32) -> Result<f64, NeumannError> {
    let r = require_domain(z)?;
    if k == 0 {
        return Err(NeumannError::TruncationTooSmall);
    }
    Ok(powi(1.0 / r, k) / (r - 1.0))
}

/// Smallest `K >= 1` with `tail_bound(z, K) <= eps`.
pub fn required_k(z: Complex64, eps: f64) -> Result<u32, NeumannError> {
    let r = require_domain(z)?;
    if eps.is_nan() || eps <= 0.0 {
        return Err(NeumannError::NonPositiveEps(eps));
    }
    // Closed-form first guess, then a short walk to the minimal level under
    // the exact same floating evaluation as `tail_bound`. The walk stays
    // O(1); near the domain boundary the required level can exceed u32.
    let guess = math::ln(1.0 / (eps * (r - 1.0))) / math::ln(r);
    let mut k: u32 = if guess.is_finite() && guess > 1.0 {
        if guess >= (u32::MAX - 8) as f64 {
            return Err(NeumannError::TruncationOutOfRange);
        }
        guess as u32
    } else {
        1
    };
    while k > 1 && tail_bound(z, k - 1)? <= eps {
        k -= 1;
    }
    while tail_bound(z, k)? > eps {
        k = k.checked_add(1).ok_or(NeumannError::TruncationOutOfRange)?;
    }
    Ok(k)
}

/// Inputs to one truncated evaluation: the point, the level, and the
/// z-independent trace coefficients `(1/n) Tr(W^k)` for `k = 0..K-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NeumannConfig {
    pub z: Complex64,
    pub k: u32,
    pub traces: Vec<f64>,
}

impl NeumannConfig {
    pub fn new(z: Complex64, k: u32, traces: Vec<f64>) -> Result<Self, NeumannError> {
        require_domain(z)?;
        if k == 0 {
            return Err(NeumannError::TruncationTooSmall);
        }
        if traces.len() < k as usize {
            return Err(NeumannError::NotEnoughTraces {
                need: k as usize,
                have: traces.len(),
            });
        }
        if traces[0] != 1.0 {
            return Err(NeumannError::InvalidTraces("trace[0] must equal 1"));
        }
        if traces.len() > 1 && traces[1] != 0.0 {
            return Err(NeumannError::InvalidTraces("trace[1] must equal 0"));
        }
        if traces.iter().any(|&t| !(-1.0..=1.0).contains(&t)) {
            return Err(NeumannError::InvalidTraces("traces must lie in [-1, 1]"));
        }
        Ok(Self { z, k, traces })
    }

    /// The truncated series `(1/(1-z)) sum_{j<K} (1-z)^{-j} traces[j]`.
    pub fn evaluate(&self) -> Complex64 {
        let q = Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - self.z);
        let mut weight = q;
        let mut acc = KahanComplex::new();
        for j in 0..self.k as usize {
            acc.add(weight * self.traces[j]);
            weight *= q;
        }
        acc.value()
    }
}

/// Truncated-series evaluation of `m_n(z)` for a graph, carrying the tail
/// bound that certifies `|value - m_n(z)| <= tail_bound`.
pub fn stieltjes_neumann(
    graph: &Graph,
    z: Complex64,
    k: u32,
) -> Result<StieltjesEval, NeumannError> {
    if k == 0 {
        return Err(NeumannError::TruncationTooSmall);
    }
    let traces = moments_up_to(graph, k - 1);
    stieltjes_neumann_from_traces(z, k, traces)
}

/// Same as [`stieltjes_neumann`] but with precomputed traces, so a z-grid can
/// reuse one moment pass (the coefficients do not depend on z).
pub fn stieltjes_neumann_from_traces(
    z: Complex64,
    k: u32,
    traces: Vec<f64>,
) -> Result<StieltjesEval, NeumannError> {
    let config = NeumannConfig::new(z, k, traces)?;
    let value = config.evaluate();
    Ok(StieltjesEval {
        z,
        value,
        method: StieltjesMethod::Neumann,
        truncation: Some(k),
        tail_bound: Some(tail_bound(z, k)?),
    })
}

/// Ensemble summary of `stieltjes_neumann` at one `(n, z, K)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitRow {
    pub n: u32,
    pub mean: Complex64,
    pub stderr_re: f64,
    pub stderr_im: f64,
    pub n_seeds: usize,
}

/// Finite-n ensemble estimate of the limiting transform at `z`: for each
/// size, the seed-ensemble mean and standard error of the truncated series;
/// the largest-n mean is the limit estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate {
    pub z: Complex64,
    pub k: u32,
    pub tail_bound: f64,
    pub rows: Vec<LimitRow>,
}

impl LimitEstimate {
    /// Mean at the largest size in the study.
    pub fn estimate(&self) -> Complex64 {
        self.rows
            .iter()
            .max_by_key(|r| r.n)
            .expect("rows nonempty by construction")
            .mean
    }
}

pub fn limit_estimate(
    m: u32,
    z: Complex64,
    n_list: &[u32],
    seeds: &[u64],
    k: u32,
) -> Result<LimitEstimate, NeumannError> {
    require_domain(z)?;
    if k == 0 {
        return Err(NeumannError::TruncationTooSmall);
    }
    if n_list.is_empty() {
        return Err(NeumannError::EmptyEnsemble("n_list"));
    }
    if seeds.is_empty() {
        return Err(NeumannError::EmptyEnsemble("seeds"));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let mut res = Vec::with_capacity(seeds.len());
        let mut ims = Vec::with_capacity(seeds.len());
        for &seed in seeds {
            let graph = Graph::generate(n, m, seed)?;
            let eval = stieltjes_neumann(&graph, z, k)?;
            res.push(eval.value.re);
            ims.push(eval.value.im);
        }
        let (mean_re, std_re) = mean_std(&res);
        let (mean_im, std_im) = mean_std(&ims);
        let root = math::sqrt(seeds.len() as f64);
        rows.push(LimitRow {
            n,
            mean: Complex64::new(mean_re, mean_im),
            stderr_re: std_re / root,
            stderr_im: std_im / root,
            n_seeds: seeds.len(),
        });
    }
    Ok(LimitEstimate {
        z,
        k,
        tail_bound: tail_bound(z, k)?,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_membership() {
        assert!(in_domain(Complex64::new(1.0, 1.5)));
        assert!(!in_domain(Complex64::new(1.0, 0.5)));
        assert!(!in_domain(Complex64::new(3.0, -1.0)));
    }

    #[test]
    fn tail_bound_values() {
        let z = Complex64::new(1.0, 1.5);
        assert_eq!(tail_bound(z, 1).unwrap(), 4.0 / 3.0);
        let t40 = tail_bound(z, 40).unwrap();
        assert!((t40 - 1.8087e-7).abs() < 1e-10);
        for k in 1..60 {
            assert!(tail_bound(z, k + 1).unwrap() < tail_bound(z, k).unwrap());
        }
        assert!(matches!(
            tail_bound(Complex64::new(1.0, 0.5), 3),
            Err(NeumannError::OutsideDomain { .. })
        ));
    }

    #[test]
    fn required_k_brackets() {
        let z = Complex64::new(1.0, 1.5);
        assert_eq!(required_k(z, 4.0 / 3.0).unwrap(), 1);
        assert_eq!(required_k(z, 10.0).unwrap(), 1);
        for eps in [1e-2, 1e-4, 1e-8, 1e-300] {
            let k = required_k(z, eps).unwrap();
            assert!(tail_bound(z, k).unwrap() <= eps);
            assert!(k == 1 || tail_bound(z, k - 1).unwrap() > eps, "eps={eps:e}");
        }
        assert!(matches!(
            required_k(z, 0.0),
            Err(NeumannError::NonPositiveEps(_))
        ));
        // Very close to the domain boundary the level outgrows u32.
        assert!(matches!(
            required_k(Complex64::new(1.0, 1.0 + 1e-9), 1e-8),
            Err(NeumannError::TruncationOutOfRange)
        ));
    }

    #[test]
    fn k_equals_one_is_leading_term() {
        let g = Graph::generate(50, 2, 4).unwrap();
        let z = Complex64::new(3.0, 1.0);
        let eval = stieltjes_neumann(&g, z, 1).unwrap();
        let lead = Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - z);
        assert!((eval.value - lead).norm() < 1e-15);
        assert_eq!(eval.truncation, Some(1));
    }

    #[test]
    fn two_vertex_closed_form_within_tail() {
        let g = Graph::generate(2, 3, 0).unwrap();
        let z = Complex64::new(2.0, 1.0);
        let eval = stieltjes_neumann(&g, z, 60).unwrap();
        let exact = 0.5
            * (Complex64::new(1.0, 0.0) / (Complex64::new(0.0, 0.0) - z)
                + Complex64::new(1.0, 0.0) / (Complex64::new(2.0, 0.0) - z));
        assert!((eval.value - exact).norm() <= eval.tail_bound.unwrap());
    }

    #[test]
    fn config_validation() {
        let z = Complex64::new(1.0, 2.0);
        assert!(NeumannConfig::new(z, 2, alloc::vec![1.0, 0.0]).is_ok());
        assert!(matches!(
            NeumannConfig::new(z, 2, alloc::vec![0.9, 0.0]),
            Err(NeumannError::InvalidTraces(_))
        ));
        assert!(matches!(
            NeumannConfig::new(z, 2, alloc::vec![1.0, 0.5]),
            Err(NeumannError::InvalidTraces(_))
        ));
        assert!(matches!(
            NeumannConfig::new(z, 4, alloc::vec![1.0, 0.0, 2.0, 0.0]),
            Err(NeumannError::InvalidTraces(_))
        ));
        assert!(matches!(
            NeumannConfig::new(z, 4, alloc::vec![1.0, 0.0]),
            Err(NeumannError::NotEnoughTraces { .. })
        ));
    }

    #[test]
    fn single_cell_limit_estimate_has_zero_stderr() {
        let z = Complex64::new(1.0, 1.5);
        let est = limit_estimate(2, z, &[40], &[7], 10).unwrap();
        assert_eq!(est.rows.len(), 1);
        assert_eq!(est.rows[0].stderr_re, 0.0);
        assert_eq!(est.rows[0].stderr_im, 0.0);
        let g = Graph::generate(40, 2, 7).unwrap();
        let single = stieltjes_neumann(&g, z, 10).unwrap();
        assert_eq!(est.estimate(), single.value);
    }
}
