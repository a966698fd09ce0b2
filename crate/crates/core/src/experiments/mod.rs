//! Multi-seed, multi-size studies: self-averaging of local functionals,
//! trace-moment and ESD stabilization, and the explicit Azuma-Hoeffding
//! bound calculators that accompany them.
//!
//! Studies are pure functions of their configuration. Cells (one graph, one
//! set of per-graph statistics) can be computed independently and in any
//! order; aggregation walks the configured grid in a fixed order with
//! compensated sums, so a report never depends on scheduling.

mod bounds;
mod concentration;
mod convergence;

pub use bounds::{azuma_bound, n_ball_bound};
pub use concentration::{
    concentration_aggregate, concentration_cell, concentration_study, ConcentrationCell,
    ConcentrationEntry, ConcentrationReport, ConcentrationRow,
};
pub use convergence::{
    convergence_aggregate, convergence_cell, convergence_study, ConvergenceCell, ConvergenceDelta,
    ConvergenceReport, ConvergenceSizeRow,
};

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::graph::GraphError;
use crate::local::LocalError;
use crate::math;
use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExperimentError {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parameter {0} must be positive")]
    NonPositive(&'static str),
    #[error("invalid study config: {0}")]
    InvalidConfig(&'static str),
    #[error("study cells do not cover the configured (n, seed) grid")]
    IncompleteCells,
    #[error("intermediate value violates an invariant: {0}")]
    InvariantViolated(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Truncation-level rule for degree caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRule {
    /// The same cap at every size.
    Fixed(u64),
    /// `K(n) = floor(log n)` (natural logarithm), clamped to at least `m` so
    /// the cap never falls below the minimum degree.
    LogN,
}

impl KRule {
    pub fn cap(&self, n: u32, m: u32) -> u64 {
        match self {
            KRule::Fixed(k) => *k,
            KRule::LogN => (math::ln(n as f64) as u64).max(m as u64),
        }
    }
}

/// Configuration for a study run.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub m: u32,
    pub n_list: Vec<u32>,
    pub seeds: Vec<u64>,
    pub k_list: Vec<u32>,
    pub z_list: Vec<Complex64>,
    pub k_rule: KRule,
    pub bins: usize,
    pub dense_limit: usize,
}

impl StudyConfig {
    fn validate_common(&self) -> Result<(), ExperimentError> {
        if self.n_list.is_empty() {
            return Err(ExperimentError::InvalidConfig("n_list is empty"));
        }
        if self.seeds.is_empty() {
            return Err(ExperimentError::InvalidConfig("seed list is empty"));
        }
        if self.k_list.is_empty() {
            return Err(ExperimentError::InvalidConfig("k_list is empty"));
        }
        if self.n_list.iter().any(|&n| n < 2) {
            return Err(ExperimentError::InvalidConfig("sizes must be >= 2"));
        }
        if self.m < 2 {
            return Err(ExperimentError::InvalidConfig("m must be >= 2"));
        }
        if self.bins == 0 {
            return Err(ExperimentError::InvalidConfig("bins must be >= 1"));
        }
        if self.z_list.iter().any(|z| z.im <= 0.0) {
            return Err(ExperimentError::InvalidConfig(
                "all z must have positive imaginary part",
            ));
        }
        if let KRule::Fixed(k) = self.k_rule {
            if k < self.m as u64 {
                return Err(ExperimentError::InvalidConfig(
                    "fixed truncation K must be >= m",
                ));
            }
        }
        Ok(())
    }

    pub fn validate_concentration(&self) -> Result<(), ExperimentError> {
        self.validate_common()?;
        if self.seeds.len() < 10 {
            return Err(ExperimentError::InvalidConfig(
                "concentration studies need >= 10 seeds",
            ));
        }
        Ok(())
    }

    pub fn validate_convergence(&self) -> Result<(), ExperimentError> {
        self.validate_common()?;
        if self.n_list.len() < 3 {
            return Err(ExperimentError::InvalidConfig("need >= 3 sizes"));
        }
        if self.seeds.len() < 5 {
            return Err(ExperimentError::InvalidConfig(
                "convergence studies need >= 5 seeds",
            ));
        }
        if self.z_list.is_empty() {
            return Err(ExperimentError::InvalidConfig("z_list is empty"));
        }
        Ok(())
    }
}

/// Index cells by the configured (n, seed) grid, requiring exact coverage.
fn grid_index<'a, C>(
    cfg: &StudyConfig,
    cells: &'a [C],
    key: impl Fn(&C) -> (u32, u64),
) -> Result<Vec<&'a C>, ExperimentError> {
    let mut out: Vec<Option<&C>> = alloc::vec![None; cfg.n_list.len() * cfg.seeds.len()];
    for cell in cells {
        let (n, seed) = key(cell);
        let ni = cfg.n_list.iter().position(|&x| x == n);
        let si = cfg.seeds.iter().position(|&x| x == seed);
        match (ni, si) {
            (Some(ni), Some(si)) => {
                let slot = &mut out[ni * cfg.seeds.len() + si];
                if slot.is_some() {
                    return Err(ExperimentError::IncompleteCells);
                }
                *slot = Some(cell);
            }
            _ => return Err(ExperimentError::IncompleteCells),
        }
    }
    out.into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(ExperimentError::IncompleteCells)
}

pub(crate) fn check_unit_interval(x: f64, what: &'static str) -> Result<(), ExperimentError> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(ExperimentError::InvariantViolated(what));
    }
    Ok(())
}
