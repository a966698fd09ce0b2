//! Spectra of the normalized Laplacian: eigenvalues, the empirical spectral
//! distribution, Stieltjes transforms, trace moments, and distances between
//! empirical spectra.
//!
//! `L = I - W` is symmetric positive semidefinite with spectrum in `[0, 2]`;
//! `0` is always an eigenvalue (eigenvector `sqrt(d)`). The Stieltjes
//! transform `m_n(z) = (1/n) Tr (L - zI)^{-1}` is computed either from the
//! eigenvalues or by `n` complex linear solves; both backends live here, the
//! series backend lives in [`crate::neumann`].

pub mod eig;
mod zsolve;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::graph::Graph;
use crate::local::{local_average, DpScratch, LocalFunctionalSpec};
use crate::math;
use crate::numeric::{KahanComplex, KahanSum};
use crate::operators::{OperatorError, OperatorKind, OperatorView};

pub use eig::EigenError;

/// Containment / zero-mode tolerance for eigensolves of `L`.
pub const SPECTRUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error("eigenvalues escape [0, 2]: min={min:e}, max={max:e}")]
    ContainmentViolated { min: f64, max: f64 },
    #[error("smallest eigenvalue {min:e} is not within tolerance of 0")]
    ZeroModeMissing { min: f64 },
    #[error("Im z must be positive, got {0:e}")]
    NonPositiveImZ(f64),
    #[error("empty spectrum")]
    EmptySpectrum,
    #[error("linear solver failed: {0}")]
    Solve(#[from] zsolve::ZSolveError),
    #[error("computed transform violates a resolvent bound: {0}")]
    ResolventBoundViolated(&'static str),
}

/// Sorted eigenvalues of the normalized Laplacian plus graph provenance.
///
/// `eigenvalues` are clamped to `[0, 2]` after the containment assertion has
/// passed (removes sub-tolerance excursions without hiding real violations);
/// `raw_min`/`raw_max` keep the unclamped extremes.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub raw_min: f64,
    pub raw_max: f64,
    pub n: u32,
    pub m: u32,
    pub seed: u64,
    pub tol: f64,
}

/// How a Stieltjes value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StieltjesMethod {
    DirectEig,
    DirectSolve,
    Neumann,
}

impl StieltjesMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            StieltjesMethod::DirectEig => "direct_eig",
            StieltjesMethod::DirectSolve => "direct_solve",
            StieltjesMethod::Neumann => "neumann",
        }
    }
}

/// One evaluation of `m_n(z)`, tagged with its method; Neumann evaluations
/// also carry the truncation level and the rigorous tail bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StieltjesEval {
    pub z: Complex64,
    pub value: Complex64,
    pub method: StieltjesMethod,
    pub truncation: Option<u32>,
    pub tail_bound: Option<f64>,
}

/// All eigenvalues of the dense `L_n`, ascending, with containment and
/// zero-mode checks at tolerance [`SPECTRUM_TOL`].
pub fn eigenvalues(graph: &Graph, dense_limit: usize) -> Result<SpectrumResult, SpectralError> {
    let view = OperatorView::new(graph, OperatorKind::Laplacian);
    let dense = view.materialize_dense(dense_limit)?;
    let mut vals = eig::symmetric_eigenvalues(dense)?;
    let raw_min = vals[0];
    let raw_max = *vals.last().expect("n >= 2");
    if raw_min < -SPECTRUM_TOL || raw_max > 2.0 + SPECTRUM_TOL {
        return Err(SpectralError::ContainmentViolated {
            min: raw_min,
            max: raw_max,
        });
    }
    if raw_min > SPECTRUM_TOL {
        return Err(SpectralError::ZeroModeMissing { min: raw_min });
    }
    for v in &mut vals {
        *v = v.clamp(0.0, 2.0);
    }
    Ok(SpectrumResult {
        eigenvalues: vals,
        raw_min,
        raw_max,
        n: graph.vertex_count(),
        m: graph.edges_per_vertex(),
        seed: graph.seed(),
        tol: SPECTRUM_TOL,
    })
}

/// `m_n(z) = (1/n) sum_i (lambda_i - z)^{-1}` from a computed spectrum.
pub fn stieltjes_direct(
    spectrum: &SpectrumResult,
    z: Complex64,
) -> Result<StieltjesEval, SpectralError> {
    if z.im <= 0.0 {
        return Err(SpectralError::NonPositiveImZ(z.im));
    }
    if spectrum.eigenvalues.is_empty() {
        return Err(SpectralError::EmptySpectrum);
    }
    let mut acc = KahanComplex::new();
    for &lambda in &spectrum.eigenvalues {
        acc.add(Complex64::new(1.0, 0.0) / (Complex64::new(lambda, 0.0) - z));
    }
    let value = acc.value() / spectrum.eigenvalues.len() as f64;
    check_resolvent_bounds(value, z)?;
    Ok(StieltjesEval {
        z,
        value,
        method: StieltjesMethod::DirectEig,
        truncation: None,
        tail_bound: None,
    })
}

/// `m_n(z)` via `n` complex linear solves `(L - zI) x = delta_u`, summing the
/// `u`-th entry of each solution. Independent of the eigensolver path.
pub fn stieltjes_solve(
    graph: &Graph,
    z: Complex64,
    dense_limit: usize,
) -> Result<StieltjesEval, SpectralError> {
    if z.im <= 0.0 {
        return Err(SpectralError::NonPositiveImZ(z.im));
    }
    let n = graph.vertex_count() as usize;
    if n > dense_limit {
        return Err(SpectralError::Operator(OperatorError::DenseLimitExceeded {
            n,
            limit: dense_limit,
        }));
    }
    let view = OperatorView::new(graph, OperatorKind::Laplacian);
    let dense = view.materialize_dense(dense_limit)?;
    let mut a: Vec<Complex64> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut entry = Complex64::new(dense.get(i, j), 0.0);
            if i == j {
                entry -= z;
            }
            a.push(entry);
        }
    }
    let lu = zsolve::ZLu::factor(a, n)?;
    let mut rhs = alloc::vec![Complex64::new(0.0, 0.0); n];
    let mut acc = KahanComplex::new();
    for u in 0..n {
        rhs.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
        rhs[u] = Complex64::new(1.0, 0.0);
        lu.solve(&mut rhs);
        acc.add(rhs[u]);
    }
    let value = acc.value() / n as f64;
    check_resolvent_bounds(value, z)?;
    Ok(StieltjesEval {
        z,
        value,
        method: StieltjesMethod::DirectSolve,
        truncation: None,
        tail_bound: None,
    })
}

fn check_resolvent_bounds(value: Complex64, z: Complex64) -> Result<(), SpectralError> {
    // |m_n(z)| <= 1/Im z and Im m_n(z) > 0 hold exactly in real arithmetic;
    // allow a hair of floating slack on the modulus.
    if math::cabs(value) > (1.0 + 1e-9) / z.im {
        return Err(SpectralError::ResolventBoundViolated("|m(z)| <= 1/Im z"));
    }
    if value.im <= 0.0 {
        return Err(SpectralError::ResolventBoundViolated("Im m(z) > 0"));
    }
    Ok(())
}

/// Normalized trace moment `(1/n) Tr(W^k)`, evaluated as the local average of
/// k-step return probabilities.
pub fn moment_trace(graph: &Graph, k: u32) -> f64 {
    local_average(graph, &LocalFunctionalSpec::return_probability(k))
        .expect("untruncated return-probability spec is always valid")
}

/// All moments `(1/n) Tr(W^k)` for `k = 0..=k_max` in one pass: each root
/// runs a single k_max-step DP and contributes its return probability at
/// every intermediate step. Agrees with [`moment_trace`] bit-for-bit.
pub fn moments_up_to(graph: &Graph, k_max: u32) -> Vec<f64> {
    let n = graph.vertex_count() as usize;
    let mut scratch = DpScratch::new(n);
    let mut accs = alloc::vec![KahanSum::new(); k_max as usize + 1];
    for x in 0..n {
        let probs = crate::local::dp_return_probs(graph, x, k_max, &mut scratch);
        for (acc, &p) in accs.iter_mut().zip(&probs) {
            acc.add(p);
        }
    }
    accs.iter().map(|acc| acc.value() / n as f64).collect()
}

/// Snap a spectrum value to the fixed comparison grid with spacing `2^-40`
/// (about 9.1e-13). Power-of-two scaling is exact, so values that agree up
/// to solver jitter (~1e-14) collapse onto the same grid point; in
/// particular the kernel atom at exactly 1 lands on a grid center. Without
/// this, CDF comparisons register sub-tolerance jitter inside spectral
/// atoms as mass differences.
pub(crate) fn snap_to_grid(x: f64) -> f64 {
    const SCALE: f64 = (1u64 << 40) as f64;
    math::round(x * SCALE) / SCALE
}

/// Sup-distance between the empirical CDFs of two sorted samples, compared
/// on the snapped grid (see [`snap_to_grid`]).
pub fn kolmogorov_distance_sorted(a: &[f64], b: &[f64]) -> Result<f64, SpectralError> {
    if a.is_empty() || b.is_empty() {
        return Err(SpectralError::EmptySpectrum);
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut worst: f64 = 0.0;
    let at = |s: &[f64], k: usize| snap_to_grid(s[k]);
    while i < a.len() || j < b.len() {
        let x = if i < a.len() && j < b.len() {
            at(a, i).min(at(b, j))
        } else if i < a.len() {
            at(a, i)
        } else {
            at(b, j)
        };
        while i < a.len() && at(a, i) <= x {
            i += 1;
        }
        while j < b.len() && at(b, j) <= x {
            j += 1;
        }
        worst = worst.max(math::abs(i as f64 / na - j as f64 / nb));
    }
    Ok(worst)
}

/// Kolmogorov distance between two empirical spectral distributions.
pub fn kolmogorov_distance(a: &SpectrumResult, b: &SpectrumResult) -> Result<f64, SpectralError> {
    kolmogorov_distance_sorted(&a.eigenvalues, &b.eigenvalues)
}

/// Histogram mass over fixed bins on `[0, 2]`; values are clamped into range
/// so the masses always sum to one. Values are snapped to the comparison
/// grid first, so an atom sitting exactly on a bin edge (the kernel atom at
/// 1 does, for even bin counts) always falls into the same bin instead of
/// splitting on solver jitter.
pub fn esd_histogram(eigenvalues: &[f64], bins: usize) -> Vec<f64> {
    assert!(bins > 0, "histogram needs at least one bin");
    let mut mass = alloc::vec![0.0; bins];
    if eigenvalues.is_empty() {
        return mass;
    }
    let w = 1.0 / eigenvalues.len() as f64;
    for &lambda in eigenvalues {
        let pos = (snap_to_grid(lambda).clamp(0.0, 2.0) / 2.0) * bins as f64;
        let idx = (pos as usize).min(bins - 1);
        mass[idx] += w;
    }
    mass
}
