//! Verb execution: resolves flags and the environment, drives the core
//! computations (optionally across worker threads), and writes the output
//! files. Returns the list of paths written.

use std::path::{Path, PathBuf};

use paspectra_core::experiments::{
    concentration_aggregate, concentration_cell, convergence_aggregate, convergence_cell,
    ExperimentError, KRule, StudyConfig,
};
use paspectra_core::graph::Graph;
use paspectra_core::local::extract_ball;
use paspectra_core::neumann::{limit_estimate, required_k, stieltjes_neumann_from_traces};
use paspectra_core::spectral::{
    eigenvalues, esd_histogram, moments_up_to, stieltjes_direct, stieltjes_solve, StieltjesEval,
};
use paspectra_core::{Complex64, DEFAULT_DENSE_LIMIT};
use rayon::prelude::*;

use crate::ball_file::encode_ball;
use crate::cli::{Cli, Command, Method, OutputFormat};
use crate::complexfmt::{format_complex, parse_complex};
use crate::config_hash;
use crate::error::CliError;
use crate::graph_file::{read_graph_file, write_graph_file};
use crate::reports;

pub const DENSE_LIMIT_ENV: &str = "PASPECTRA_DENSE_LIMIT";

pub fn execute(cli: Cli) -> Result<Vec<PathBuf>, CliError> {
    match cli.command {
        Command::Generate { n, m, seed, out } => run_generate(n, m, seed, &out),
        Command::Spectrum {
            input,
            out,
            bins,
            hist,
            format,
        } => run_spectrum(&input, &out, bins, hist.as_deref(), format),
        Command::Stieltjes {
            input,
            z,
            method,
            k,
            eps,
            m,
            n_list,
            seeds,
            seed_range,
            out,
            format,
        } => run_stieltjes(StieltjesArgs {
            input,
            z,
            method,
            k,
            eps,
            m,
            n_list,
            seeds,
            seed_range,
            out,
            format,
        }),
        Command::Moments {
            input,
            k_max,
            out,
            format,
        } => run_moments(&input, k_max, &out, format),
        Command::Ball {
            input,
            root,
            r,
            out,
        } => run_ball(&input, root, r, &out),
        Command::Concentrate {
            m,
            n_list,
            seeds,
            seed_range,
            k_list,
            k_rule,
            out_dir,
            jobs,
        } => run_concentrate(
            m, n_list, seeds, seed_range, k_list, &k_rule, &out_dir, jobs,
        ),
        Command::Converge {
            m,
            n_list,
            seeds,
            seed_range,
            k_list,
            z_list,
            bins,
            out_dir,
            jobs,
        } => run_converge(
            m, n_list, seeds, seed_range, k_list, z_list, bins, &out_dir, jobs,
        ),
    }
}

fn dense_limit() -> Result<usize, CliError> {
    match std::env::var(DENSE_LIMIT_ENV) {
        Ok(v) => v.parse::<usize>().map_err(|_| {
            CliError::Domain(format!("{DENSE_LIMIT_ENV} must be an integer, got `{v}`"))
        }),
        Err(_) => Ok(DEFAULT_DENSE_LIMIT),
    }
}

fn resolve_seeds(
    explicit: Vec<u64>,
    range: Option<String>,
    default_start: u64,
    default_count: u64,
) -> Result<Vec<u64>, CliError> {
    match (explicit.is_empty(), range) {
        (false, Some(_)) => Err(CliError::Usage(
            "--seeds and --seed-range are mutually exclusive".into(),
        )),
        (false, None) => Ok(explicit),
        (true, Some(spec)) => {
            let (start, count) = spec.split_once(':').ok_or_else(|| {
                CliError::Usage(format!("--seed-range wants START:COUNT, got `{spec}`"))
            })?;
            let start: u64 = start
                .parse()
                .map_err(|_| CliError::Usage(format!("bad seed-range start `{start}`")))?;
            let count: u64 = count
                .parse()
                .map_err(|_| CliError::Usage(format!("bad seed-range count `{count}`")))?;
            Ok((start..start.saturating_add(count)).collect())
        }
        (true, None) => Ok((default_start..default_start + default_count).collect()),
    }
}

fn parse_k_rule(s: &str) -> Result<KRule, CliError> {
    if s == "logn" {
        return Ok(KRule::LogN);
    }
    if let Some(k) = s.strip_prefix("fixed:") {
        let k: u64 = k
            .parse()
            .map_err(|_| CliError::Usage(format!("bad fixed truncation level `{k}`")))?;
        return Ok(KRule::Fixed(k));
    }
    Err(CliError::Usage(format!(
        "--k-rule wants `logn` or `fixed:<K>`, got `{s}`"
    )))
}

fn parse_zs(raw: &[String]) -> Result<Vec<Complex64>, CliError> {
    raw.iter()
        .map(|s| parse_complex(s).map_err(CliError::Usage))
        .collect()
}

fn k_rule_text(rule: KRule) -> String {
    match rule {
        KRule::LogN => "logn".into(),
        KRule::Fixed(k) => format!("fixed:{k}"),
    }
}

fn seeds_text(seeds: &[u64]) -> String {
    seeds
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn list_text<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn zs_text(zs: &[Complex64]) -> String {
    zs.iter()
        .map(|z| format_complex(*z))
        .collect::<Vec<_>>()
        .join(",")
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, content)?;
    Ok(())
}

fn run_generate(n: u32, m: u32, seed: u64, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let graph = Graph::generate(n, m, seed)?;
    if let Some(parent) = out.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    write_graph_file(out, &graph)?;
    Ok(vec![out.to_path_buf()])
}

fn graph_echo(graph: &Graph) -> String {
    format!(
        "graph_n={} graph_m={} graph_seed={}",
        graph.vertex_count(),
        graph.edges_per_vertex(),
        graph.seed()
    )
}

fn run_spectrum(
    input: &Path,
    out: &Path,
    bins: usize,
    hist: Option<&Path>,
    format: OutputFormat,
) -> Result<Vec<PathBuf>, CliError> {
    if bins == 0 {
        return Err(CliError::Domain("--bins must be >= 1".into()));
    }
    let limit = dense_limit()?;
    let graph = read_graph_file(input)?;
    let spec = eigenvalues(&graph, limit)?;
    let echo = format!(
        "spectrum in={} {} bins={} dense_limit={} format={}",
        input.display(),
        graph_echo(&graph),
        bins,
        limit,
        fmt_name(format),
    );
    let mut written = Vec::new();
    let mass = esd_histogram(&spec.eigenvalues, bins);
    match format {
        OutputFormat::Csv => write_file(out, &reports::spectrum_csv(&spec, &echo))?,
        OutputFormat::Json => write_file(out, &reports::spectrum_json(&spec, Some(&mass), &echo))?,
    }
    written.push(out.to_path_buf());
    if let Some(hist_path) = hist {
        write_file(hist_path, &reports::histogram_csv(&mass, &echo))?;
        written.push(hist_path.to_path_buf());
    }
    Ok(written)
}

struct StieltjesArgs {
    input: Option<PathBuf>,
    z: Vec<String>,
    method: Method,
    k: Option<u32>,
    eps: Option<f64>,
    m: Option<u32>,
    n_list: Vec<u32>,
    seeds: Vec<u64>,
    seed_range: Option<String>,
    out: PathBuf,
    format: OutputFormat,
}

fn run_stieltjes(args: StieltjesArgs) -> Result<Vec<PathBuf>, CliError> {
    let zs = parse_zs(&args.z)?;
    match args.method {
        Method::Neumann => {
            if args.k.is_some() == args.eps.is_some() {
                return Err(CliError::Usage(
                    "--method neumann wants exactly one of --K or --eps".into(),
                ));
            }
        }
        _ => {
            if args.k.is_some() || args.eps.is_some() {
                return Err(CliError::Usage(
                    "--K/--eps only apply to --method neumann".into(),
                ));
            }
        }
    }

    match &args.input {
        Some(path) => {
            if args.m.is_some()
                || !args.n_list.is_empty()
                || !args.seeds.is_empty()
                || args.seed_range.is_some()
            {
                return Err(CliError::Usage(
                    "ensemble flags (--m/--n-list/--seeds/--seed-range) require omitting --in"
                        .into(),
                ));
            }
            run_stieltjes_single(path, &zs, &args)
        }
        None => run_stieltjes_ensemble(&zs, args),
    }
}

fn resolve_truncation(z: Complex64, k: Option<u32>, eps: Option<f64>) -> Result<u32, CliError> {
    match (k, eps) {
        (Some(k), None) => Ok(k),
        (None, Some(eps)) => Ok(required_k(z, eps)?),
        _ => unreachable!("validated by caller"),
    }
}

fn run_stieltjes_single(
    input: &Path,
    zs: &[Complex64],
    args: &StieltjesArgs,
) -> Result<Vec<PathBuf>, CliError> {
    let limit = dense_limit()?;
    let graph = read_graph_file(input)?;
    let evals: Vec<StieltjesEval> = match args.method {
        Method::Direct => {
            let spec = eigenvalues(&graph, limit)?;
            zs.iter()
                .map(|&z| stieltjes_direct(&spec, z))
                .collect::<Result<_, _>>()?
        }
        Method::Solve => zs
            .iter()
            .map(|&z| stieltjes_solve(&graph, z, limit))
            .collect::<Result<_, _>>()?,
        Method::Neumann => {
            let levels: Vec<u32> = zs
                .iter()
                .map(|&z| resolve_truncation(z, args.k, args.eps))
                .collect::<Result<_, _>>()?;
            let k_max = *levels.iter().max().expect("at least one z");
            // The series coefficients are z-independent: one moment pass
            // serves the whole grid.
            let traces = moments_up_to(&graph, k_max - 1);
            zs.iter()
                .zip(&levels)
                .map(|(&z, &k)| {
                    stieltjes_neumann_from_traces(z, k, traces[..k as usize].to_vec())
                        .map_err(CliError::from)
                })
                .collect::<Result<_, _>>()?
        }
    };
    let echo = format!(
        "stieltjes in={} {} z={} method={}{}{} dense_limit={} format={}",
        input.display(),
        graph_echo(&graph),
        zs_text(zs),
        method_name(args.method),
        args.k.map(|k| format!(" K={k}")).unwrap_or_default(),
        args.eps
            .map(|e| format!(" eps={}", crate::numfmt::f(e)))
            .unwrap_or_default(),
        limit,
        fmt_name(args.format),
    );
    let content = match args.format {
        OutputFormat::Csv => reports::stieltjes_csv(&evals, &echo),
        OutputFormat::Json => reports::stieltjes_json(&evals, &echo),
    };
    write_file(&args.out, &content)?;
    Ok(vec![args.out.clone()])
}

fn run_stieltjes_ensemble(zs: &[Complex64], args: StieltjesArgs) -> Result<Vec<PathBuf>, CliError> {
    if args.method != Method::Neumann {
        return Err(CliError::Usage(
            "ensemble mode (no --in) estimates the limit via --method neumann".into(),
        ));
    }
    let m = args
        .m
        .ok_or_else(|| CliError::Usage("ensemble mode needs --m".into()))?;
    if args.n_list.is_empty() {
        return Err(CliError::Usage("ensemble mode needs --n-list".into()));
    }
    let seeds = resolve_seeds(args.seeds, args.seed_range, 0, 30)?;
    let mut estimates = Vec::with_capacity(zs.len());
    for &z in zs {
        let k = resolve_truncation(z, args.k, args.eps)?;
        estimates.push(limit_estimate(m, z, &args.n_list, &seeds, k)?);
    }
    let echo = format!(
        "stieltjes m={} n_list={} seeds={} z={} method=neumann{}{} format={}",
        m,
        list_text(&args.n_list),
        seeds_text(&seeds),
        zs_text(zs),
        args.k.map(|k| format!(" K={k}")).unwrap_or_default(),
        args.eps
            .map(|e| format!(" eps={}", crate::numfmt::f(e)))
            .unwrap_or_default(),
        fmt_name(args.format),
    );
    let content = match args.format {
        OutputFormat::Csv => reports::limit_csv(&estimates, &echo),
        OutputFormat::Json => reports::limit_json(&estimates, &echo),
    };
    write_file(&args.out, &content)?;
    Ok(vec![args.out.clone()])
}

fn run_moments(
    input: &Path,
    k_max: u32,
    out: &Path,
    format: OutputFormat,
) -> Result<Vec<PathBuf>, CliError> {
    let graph = read_graph_file(input)?;
    let moments = moments_up_to(&graph, k_max);
    let echo = format!(
        "moments in={} {} k_max={} format={}",
        input.display(),
        graph_echo(&graph),
        k_max,
        fmt_name(format),
    );
    let content = match format {
        OutputFormat::Csv => reports::moments_csv(&moments, &echo),
        OutputFormat::Json => reports::moments_json(&moments, &echo),
    };
    write_file(out, &content)?;
    Ok(vec![out.to_path_buf()])
}

fn run_ball(input: &Path, root: u32, r: u32, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let graph = read_graph_file(input)?;
    let ball = extract_ball(&graph, root, r).map_err(|e| CliError::Domain(e.to_string()))?;
    write_file(out, &encode_ball(&ball))?;
    Ok(vec![out.to_path_buf()])
}

/// Map cells across `jobs` workers. Cell results are collected in grid
/// order and aggregated deterministically, so the report does not depend
/// on the worker count.
fn run_cells<T: Send>(
    jobs: usize,
    grid: &[(u32, u64)],
    f: impl Fn(u32, u64) -> Result<T, ExperimentError> + Sync,
) -> Result<Vec<T>, CliError> {
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be >= 1".into()));
    }
    if jobs == 1 {
        return grid
            .iter()
            .map(|&(n, seed)| f(n, seed))
            .collect::<Result<_, _>>()
            .map_err(CliError::from);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Domain(format!("worker pool: {e}")))?;
    pool.install(|| {
        grid.par_iter()
            .map(|&(n, seed)| f(n, seed))
            .collect::<Result<Vec<_>, _>>()
    })
    .map_err(CliError::from)
}

fn study_grid(cfg: &StudyConfig) -> Vec<(u32, u64)> {
    let mut grid = Vec::with_capacity(cfg.n_list.len() * cfg.seeds.len());
    for &n in &cfg.n_list {
        for &seed in &cfg.seeds {
            grid.push((n, seed));
        }
    }
    grid
}

#[allow(clippy::too_many_arguments)]
fn run_concentrate(
    m: u32,
    n_list: Vec<u32>,
    seeds: Vec<u64>,
    seed_range: Option<String>,
    k_list: Vec<u32>,
    k_rule: &str,
    out_dir: &Path,
    jobs: usize,
) -> Result<Vec<PathBuf>, CliError> {
    let seeds = resolve_seeds(seeds, seed_range, 0, 30)?;
    let cfg = StudyConfig {
        m,
        n_list,
        seeds,
        k_list,
        z_list: Vec::new(),
        k_rule: parse_k_rule(k_rule)?,
        bins: 100,
        dense_limit: dense_limit()?,
    };
    cfg.validate_concentration()?;
    let cells = run_cells(jobs, &study_grid(&cfg), |n, seed| {
        concentration_cell(&cfg, n, seed)
    })?;
    let report = concentration_aggregate(&cfg, &cells)?;
    let echo = format!(
        "concentrate m={} n_list={} seeds={} k_list={} k_rule={} dense_limit={}",
        cfg.m,
        list_text(&cfg.n_list),
        seeds_text(&cfg.seeds),
        list_text(&cfg.k_list),
        k_rule_text(cfg.k_rule),
        cfg.dense_limit,
    );
    let hash = config_hash(&echo);
    std::fs::create_dir_all(out_dir)?;
    let json_path = out_dir.join(format!("concentration_{hash}.json"));
    let csv_path = out_dir.join(format!("concentration_{hash}.csv"));
    write_file(&json_path, &reports::concentration_json(&report, &echo))?;
    write_file(&csv_path, &reports::concentration_csv(&report, &echo))?;
    Ok(vec![json_path, csv_path])
}

#[allow(clippy::too_many_arguments)]
fn run_converge(
    m: u32,
    n_list: Vec<u32>,
    seeds: Vec<u64>,
    seed_range: Option<String>,
    k_list: Vec<u32>,
    z_list: Vec<String>,
    bins: usize,
    out_dir: &Path,
    jobs: usize,
) -> Result<Vec<PathBuf>, CliError> {
    let seeds = resolve_seeds(seeds, seed_range, 0, 5)?;
    let cfg = StudyConfig {
        m,
        n_list,
        seeds,
        k_list,
        z_list: parse_zs(&z_list)?,
        k_rule: KRule::LogN,
        bins,
        dense_limit: dense_limit()?,
    };
    cfg.validate_convergence()?;
    let cells = run_cells(jobs, &study_grid(&cfg), |n, seed| {
        convergence_cell(&cfg, n, seed)
    })?;
    let report = convergence_aggregate(&cfg, &cells)?;
    let echo = format!(
        "converge m={} n_list={} seeds={} k_list={} z_list={} bins={} dense_limit={}",
        cfg.m,
        list_text(&cfg.n_list),
        seeds_text(&cfg.seeds),
        list_text(&cfg.k_list),
        zs_text(&cfg.z_list),
        cfg.bins,
        cfg.dense_limit,
    );
    let hash = config_hash(&echo);
    std::fs::create_dir_all(out_dir)?;
    let paths = [
        (
            format!("convergence_{hash}.json"),
            reports::convergence_json(&report, &echo),
        ),
        (
            format!("convergence_moments_{hash}.csv"),
            reports::convergence_moments_csv(&report, &echo),
        ),
        (
            format!("convergence_esd_{hash}.csv"),
            reports::convergence_esd_csv(&report, &echo),
        ),
        (
            format!("convergence_stieltjes_{hash}.csv"),
            reports::convergence_stieltjes_csv(&report, &echo),
        ),
        (
            format!("convergence_deltas_{hash}.csv"),
            reports::convergence_deltas_csv(&report, &echo),
        ),
    ];
    let mut written = Vec::new();
    for (name, content) in paths {
        let path = out_dir.join(name);
        write_file(&path, &content)?;
        written.push(path);
    }
    Ok(written)
}

fn fmt_name(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    }
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Direct => "direct",
        Method::Solve => "solve",
        Method::Neumann => "neumann",
    }
}
