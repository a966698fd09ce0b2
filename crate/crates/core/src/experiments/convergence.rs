//! Stabilization study: seed-averaged trace moments, ESD histograms, and
//! direct Stieltjes values per size, with cross-size deltas (moment gaps,
//! Kolmogorov distances of pooled spectra, Stieltjes gaps) and monotone
//! decrease flags.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{check_unit_interval, grid_index, ExperimentError, StudyConfig};
use crate::graph::Graph;
use crate::math;
use crate::numeric::mean_std;
use crate::spectral::{
    eigenvalues, esd_histogram, kolmogorov_distance_sorted, moments_up_to, stieltjes_direct,
};

/// Everything extracted from one generated graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceCell {
    pub n: u32,
    pub seed: u64,
    /// `(1/n) Tr(W^k)` for each k in `k_list` order.
    pub moments: Vec<f64>,
    /// Clamped ascending eigenvalues of `L`.
    pub eigenvalues: Vec<f64>,
    /// Histogram mass over the configured bins.
    pub hist: Vec<f64>,
    /// `m_n(z)` (direct method) for each z in `z_list` order.
    pub stieltjes: Vec<Complex64>,
}

/// Seed-averaged statistics at one size.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceSizeRow {
    pub n: u32,
    pub moment_mean: Vec<f64>,
    pub moment_std: Vec<f64>,
    pub stieltjes_mean: Vec<Complex64>,
    pub stieltjes_stderr_re: Vec<f64>,
    pub stieltjes_stderr_im: Vec<f64>,
    pub hist_mean: Vec<f64>,
}

/// Deltas between two successive sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceDelta {
    pub n_lo: u32,
    pub n_hi: u32,
    /// `|mean moment(n_lo) - mean moment(n_hi)|` per k.
    pub moment_delta: Vec<f64>,
    /// Kolmogorov distance between the seed-pooled spectra.
    pub esd_ks_delta: f64,
    /// `|mean m(n_lo) - mean m(n_hi)|` per z.
    pub stieltjes_delta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub config: StudyConfig,
    pub sizes: Vec<ConvergenceSizeRow>,
    pub deltas: Vec<ConvergenceDelta>,
    /// Per k: do the moment deltas strictly decrease along successive pairs?
    pub moment_deltas_decreasing: Vec<bool>,
    pub esd_deltas_decreasing: bool,
    /// Per z: do the Stieltjes deltas strictly decrease?
    pub stieltjes_deltas_decreasing: Vec<bool>,
}

pub fn convergence_cell(
    cfg: &StudyConfig,
    n: u32,
    seed: u64,
) -> Result<ConvergenceCell, ExperimentError> {
    let graph = Graph::generate(n, cfg.m, seed)?;
    let k_max = cfg.k_list.iter().copied().max().unwrap_or(0);
    let all_moments = moments_up_to(&graph, k_max);
    let mut moments = Vec::with_capacity(cfg.k_list.len());
    for &k in &cfg.k_list {
        let mk = all_moments[k as usize];
        if !(-1.0 - 1e-12..=1.0 + 1e-12).contains(&mk) {
            return Err(ExperimentError::InvariantViolated(
                "trace moment outside [-1, 1]",
            ));
        }
        moments.push(mk);
    }
    let spectrum = eigenvalues(&graph, cfg.dense_limit)?;
    let hist = esd_histogram(&spectrum.eigenvalues, cfg.bins);
    for &massbin in &hist {
        check_unit_interval(massbin, "histogram mass outside [0, 1]")?;
    }
    // stieltjes_direct re-asserts the resolvent and Herglotz bounds.
    let mut stieltjes = Vec::with_capacity(cfg.z_list.len());
    for &z in &cfg.z_list {
        stieltjes.push(stieltjes_direct(&spectrum, z)?.value);
    }
    Ok(ConvergenceCell {
        n,
        seed,
        moments,
        eigenvalues: spectrum.eigenvalues,
        hist,
        stieltjes,
    })
}

pub fn convergence_aggregate(
    cfg: &StudyConfig,
    cells: &[ConvergenceCell],
) -> Result<ConvergenceReport, ExperimentError> {
    let grid = grid_index(cfg, cells, |c| (c.n, c.seed))?;
    let s = cfg.seeds.len();
    let root = math::sqrt(s as f64);

    let mut sizes = Vec::with_capacity(cfg.n_list.len());
    let mut pooled: Vec<Vec<f64>> = Vec::with_capacity(cfg.n_list.len());
    for (ni, &n) in cfg.n_list.iter().enumerate() {
        let row_cells: Vec<&ConvergenceCell> = (0..s).map(|si| grid[ni * s + si]).collect();

        let mut moment_mean = Vec::with_capacity(cfg.k_list.len());
        let mut moment_std = Vec::with_capacity(cfg.k_list.len());
        for ki in 0..cfg.k_list.len() {
            let vals: Vec<f64> = row_cells.iter().map(|c| c.moments[ki]).collect();
            let (mean, std) = mean_std(&vals);
            moment_mean.push(mean);
            moment_std.push(std);
        }

        let mut stieltjes_mean = Vec::with_capacity(cfg.z_list.len());
        let mut stieltjes_stderr_re = Vec::with_capacity(cfg.z_list.len());
        let mut stieltjes_stderr_im = Vec::with_capacity(cfg.z_list.len());
        for zi in 0..cfg.z_list.len() {
            let re: Vec<f64> = row_cells.iter().map(|c| c.stieltjes[zi].re).collect();
            let im: Vec<f64> = row_cells.iter().map(|c| c.stieltjes[zi].im).collect();
            let (mre, sre) = mean_std(&re);
            let (mim, sim) = mean_std(&im);
            stieltjes_mean.push(Complex64::new(mre, mim));
            stieltjes_stderr_re.push(sre / root);
            stieltjes_stderr_im.push(sim / root);
        }

        let mut hist_mean = alloc::vec![0.0; cfg.bins];
        for cell in &row_cells {
            for (acc, &massbin) in hist_mean.iter_mut().zip(&cell.hist) {
                *acc += massbin;
            }
        }
        hist_mean.iter_mut().for_each(|x| *x /= s as f64);

        // Pooling seed spectra with equal weights is exactly the seed-average
        // of the empirical spectral distributions.
        let mut pool: Vec<f64> = row_cells
            .iter()
            .flat_map(|c| c.eigenvalues.iter().copied())
            .collect();
        pool.sort_unstable_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        pooled.push(pool);

        sizes.push(ConvergenceSizeRow {
            n,
            moment_mean,
            moment_std,
            stieltjes_mean,
            stieltjes_stderr_re,
            stieltjes_stderr_im,
            hist_mean,
        });
    }

    let mut deltas = Vec::with_capacity(cfg.n_list.len().saturating_sub(1));
    for i in 0..cfg.n_list.len().saturating_sub(1) {
        let (lo, hi) = (&sizes[i], &sizes[i + 1]);
        let moment_delta: Vec<f64> = lo
            .moment_mean
            .iter()
            .zip(&hi.moment_mean)
            .map(|(a, b)| math::abs(a - b))
            .collect();
        let esd_ks_delta = kolmogorov_distance_sorted(&pooled[i], &pooled[i + 1])?;
        let stieltjes_delta: Vec<f64> = lo
            .stieltjes_mean
            .iter()
            .zip(&hi.stieltjes_mean)
            .map(|(a, b)| math::cabs(a - b))
            .collect();
        deltas.push(ConvergenceDelta {
            n_lo: lo.n,
            n_hi: hi.n,
            moment_delta,
            esd_ks_delta,
            stieltjes_delta,
        });
    }

    let moment_deltas_decreasing = (0..cfg.k_list.len())
        .map(|ki| {
            deltas
                .windows(2)
                .all(|w| w[1].moment_delta[ki] < w[0].moment_delta[ki])
        })
        .collect();
    let esd_deltas_decreasing = deltas
        .windows(2)
        .all(|w| w[1].esd_ks_delta < w[0].esd_ks_delta);
    let stieltjes_deltas_decreasing = (0..cfg.z_list.len())
        .map(|zi| {
            deltas
                .windows(2)
                .all(|w| w[1].stieltjes_delta[zi] < w[0].stieltjes_delta[zi])
        })
        .collect();

    Ok(ConvergenceReport {
        config: cfg.clone(),
        sizes,
        deltas,
        moment_deltas_decreasing,
        esd_deltas_decreasing,
        stieltjes_deltas_decreasing,
    })
}

/// Sequential driver: every (n, seed) cell in grid order, then aggregate.
pub fn convergence_study(cfg: &StudyConfig) -> Result<ConvergenceReport, ExperimentError> {
    cfg.validate_convergence()?;
    let mut cells = Vec::with_capacity(cfg.n_list.len() * cfg.seeds.len());
    for &n in &cfg.n_list {
        for &seed in &cfg.seeds {
            cells.push(convergence_cell(cfg, n, seed)?);
        }
    }
    convergence_aggregate(cfg, &cells)
}
