//! Self-averaging study: ensembles of the empirical local average
//! `S_n(F_k)`, with and without the degree truncation, across sizes and
//! seeds, with the matching Azuma bound evaluated at `eps = 2 * observed std`.

use alloc::vec::Vec;

use super::{azuma_bound, check_unit_interval, grid_index, ExperimentError, StudyConfig};
use crate::graph::Graph;
use crate::local::{local_average, LocalFunctionalSpec};
use crate::numeric::mean_std;

/// Per-(graph, k) pair of local averages.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationEntry {
    pub k: u32,
    pub k_cap: u64,
    pub plain: f64,
    pub truncated: f64,
}

/// All statistics drawn from one generated graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationCell {
    pub n: u32,
    pub seed: u64,
    pub entries: Vec<ConcentrationEntry>,
}

/// Ensemble summary for one (n, k) grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationRow {
    pub n: u32,
    pub k: u32,
    pub k_cap: u64,
    pub mean: f64,
    pub std: f64,
    pub stderr: f64,
    pub mean_truncated: f64,
    pub std_truncated: f64,
    pub stderr_truncated: f64,
    /// Mean over seeds of `|S_n - S_n^(K)|`.
    pub gap_mean: f64,
    /// `2 * std`; the scale at which the Azuma bound is evaluated.
    pub azuma_eps: f64,
    /// `None` when the observed std is zero (the bound needs `eps > 0`).
    pub azuma_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationReport {
    pub config: StudyConfig,
    pub rows: Vec<ConcentrationRow>,
    /// Per k: is the ensemble std nonincreasing along `n_list`?
    pub std_nonincreasing: Vec<(u32, bool)>,
    /// Per k: is the mean truncation gap nonincreasing along `n_list`?
    pub gap_nonincreasing: Vec<(u32, bool)>,
}

/// Compute one (n, seed) cell: `S_n(F_k)` plain and truncated for every k.
pub fn concentration_cell(
    cfg: &StudyConfig,
    n: u32,
    seed: u64,
) -> Result<ConcentrationCell, ExperimentError> {
    let graph = Graph::generate(n, cfg.m, seed)?;
    let mut entries = Vec::with_capacity(cfg.k_list.len());
    for &k in &cfg.k_list {
        let plain = local_average(&graph, &LocalFunctionalSpec::return_probability(k))?;
        check_unit_interval(plain, "S_n(F_k) outside [0, 1]")?;
        let k_cap = cfg.k_rule.cap(n, cfg.m);
        let truncated = local_average(&graph, &LocalFunctionalSpec::truncated(k, k_cap))?;
        check_unit_interval(truncated, "truncated S_n(F_k) outside [0, 1]")?;
        entries.push(ConcentrationEntry {
            k,
            k_cap,
            plain,
            truncated,
        });
    }
    Ok(ConcentrationCell { n, seed, entries })
}

/// Aggregate cells over the configured grid (deterministic order).
pub fn concentration_aggregate(
    cfg: &StudyConfig,
    cells: &[ConcentrationCell],
) -> Result<ConcentrationReport, ExperimentError> {
    let grid = grid_index(cfg, cells, |c| (c.n, c.seed))?;
    let s = cfg.seeds.len();
    let mut rows = Vec::with_capacity(cfg.n_list.len() * cfg.k_list.len());
    for (ni, &n) in cfg.n_list.iter().enumerate() {
        for (ki, &k) in cfg.k_list.iter().enumerate() {
            let mut plain = Vec::with_capacity(s);
            let mut truncated = Vec::with_capacity(s);
            let mut gaps = Vec::with_capacity(s);
            let mut k_cap = 0;
            for si in 0..s {
                let cell = grid[ni * s + si];
                let entry = &cell.entries[ki];
                debug_assert_eq!(entry.k, k);
                plain.push(entry.plain);
                truncated.push(entry.truncated);
                gaps.push(crate::math::abs(entry.plain - entry.truncated));
                k_cap = entry.k_cap;
            }
            let (mean, std) = mean_std(&plain);
            let (mean_truncated, std_truncated) = mean_std(&truncated);
            let (gap_mean, _) = mean_std(&gaps);
            let root = crate::math::sqrt(s as f64);
            let azuma_eps = 2.0 * std;
            let bound = if azuma_eps > 0.0 {
                Some(azuma_bound(n as u64, azuma_eps, k, cfg.m, k_cap, 1.0)?)
            } else {
                None
            };
            rows.push(ConcentrationRow {
                n,
                k,
                k_cap,
                mean,
                std,
                stderr: std / root,
                mean_truncated,
                std_truncated,
                stderr_truncated: std_truncated / root,
                gap_mean,
                azuma_eps,
                azuma_bound: bound,
            });
        }
    }

    let mut std_nonincreasing = Vec::with_capacity(cfg.k_list.len());
    let mut gap_nonincreasing = Vec::with_capacity(cfg.k_list.len());
    for (ki, &k) in cfg.k_list.iter().enumerate() {
        let series: Vec<&ConcentrationRow> = (0..cfg.n_list.len())
            .map(|ni| &rows[ni * cfg.k_list.len() + ki])
            .collect();
        let std_ok = series.windows(2).all(|w| w[1].std <= w[0].std);
        let gap_ok = series.windows(2).all(|w| w[1].gap_mean <= w[0].gap_mean);
        std_nonincreasing.push((k, std_ok));
        gap_nonincreasing.push((k, gap_ok));
    }

    Ok(ConcentrationReport {
        config: cfg.clone(),
        rows,
        std_nonincreasing,
        gap_nonincreasing,
    })
}

/// Sequential driver: every (n, seed) cell in grid order, then aggregate.
pub fn concentration_study(cfg: &StudyConfig) -> Result<ConcentrationReport, ExperimentError> {
    cfg.validate_concentration()?;
    let mut cells = Vec::with_capacity(cfg.n_list.len() * cfg.seeds.len());
    for &n in &cfg.n_list {
        for &seed in &cfg.seeds {
            cells.push(concentration_cell(cfg, n, seed)?);
        }
    }
    concentration_aggregate(cfg, &cells)
}
