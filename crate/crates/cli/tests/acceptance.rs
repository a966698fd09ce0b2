//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured numbers. Run with
//! `cargo test -p paspectra-cli --test acceptance -- --nocapture`.
//!
//! Tolerances are pinned in code next to each assertion; nothing is
//! calibrated at runtime.

use std::time::Instant;

use num_bigint::BigUint;
use paspectra_core::dense::DenseMatrix;
use paspectra_core::experiments::{
    azuma_bound, concentration_study, convergence_study, n_ball_bound, KRule, StudyConfig,
};
use paspectra_core::graph::Graph;
use paspectra_core::local::extract_ball;
use paspectra_core::neumann::{stieltjes_neumann, tail_bound};
use paspectra_core::operators::{OperatorKind, OperatorView};
use paspectra_core::spectral::{eigenvalues, moment_trace, stieltjes_direct};
use paspectra_core::{Complex64, DEFAULT_DENSE_LIMIT};

fn dense(g: &Graph, kind: OperatorKind) -> DenseMatrix {
    OperatorView::new(g, kind)
        .materialize_dense(DEFAULT_DENSE_LIMIT)
        .unwrap()
}

/// Criterion 1: spectrum containment and the zero mode at scale.
/// m in {2,3}, n = 1000, 10 seeds each; every eigenvalue in [-1e-9, 2+1e-9],
/// smallest within 1e-9 of 0; runtime < 2 min.
#[test]
fn criterion_1_spectrum_containment() {
    let start = Instant::now();
    let mut checked = 0usize;
    for m in [2u32, 3] {
        for seed in 0..10u64 {
            let g = Graph::generate(1000, m, seed).unwrap();
            let spec = eigenvalues(&g, DEFAULT_DENSE_LIMIT).unwrap();
            assert!(
                spec.raw_min >= -1e-9 && spec.raw_max <= 2.0 + 1e-9,
                "containment violated: m={m} seed={seed} min={} max={}",
                spec.raw_min,
                spec.raw_max
            );
            assert!(
                spec.raw_min.abs() <= 1e-9,
                "zero mode missing: m={m} seed={seed} min={}",
                spec.raw_min
            );
            checked += spec.eigenvalues.len();
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "runtime {elapsed:.1}s exceeds 2 min");
    println!(
        "acceptance criterion 1 (spectrum containment): PASS \
         ({checked} eigenvalues over 20 graphs, {elapsed:.1}s)"
    );
}

/// Criterion 2: locality exactness. Ball-DP return probabilities equal dense
/// (P^k)_uu within 1e-12 for n=300, m=2, 3 seeds, all u, k <= 6; brute-force
/// path-sum oracle matches on n <= 12 within 1e-12.
#[test]
fn criterion_2_locality_exactness() {
    let mut worst: f64 = 0.0;
    for seed in [1u64, 2, 3] {
        let g = Graph::generate(300, 2, seed).unwrap();
        let p = dense(&g, OperatorKind::WalkKernel);
        let mut pk = DenseMatrix::identity(300);
        for k in 0..=6u32 {
            for u in 1..=300u32 {
                let ball = extract_ball(&g, u, k).unwrap();
                let dp = ball.return_probability(k).unwrap();
                let reference = pk.get(u as usize - 1, u as usize - 1);
                let err = (dp - reference).abs();
                worst = worst.max(err);
                assert!(
                    err < 1e-12,
                    "locality broken: seed={seed} u={u} k={k} err={err:e}"
                );
            }
            pk = pk.matmul(&p);
        }
    }

    // Path-sum expansion oracle on tiny graphs.
    fn path_sum(g: &Graph, cur: u32, target: u32, left: u32, weight: f64, acc: &mut f64) {
        if left == 0 {
            if cur == target {
                *acc += weight;
            }
            return;
        }
        let d = g.degree(cur) as f64;
        for (v, mult) in g.neighbors(cur) {
            path_sum(g, v, target, left - 1, weight * mult as f64 / d, acc);
        }
    }
    let mut worst_path: f64 = 0.0;
    for (n, m, seed) in [(8u32, 2u32, 3u64), (12, 2, 5), (11, 3, 1)] {
        let g = Graph::generate(n, m, seed).unwrap();
        for k in 0..=6u32 {
            for u in 1..=n {
                let mut brute = 0.0;
                path_sum(&g, u, u, k, 1.0, &mut brute);
                let dp = extract_ball(&g, u, k)
                    .unwrap()
                    .return_probability(k)
                    .unwrap();
                let err = (dp - brute).abs();
                worst_path = worst_path.max(err);
                assert!(err < 1e-12, "path-sum mismatch n={n} u={u} k={k}: {err:e}");
            }
        }
    }
    println!(
        "acceptance criterion 2 (locality exactness): PASS \
         (max |ball-DP - dense| = {worst:.2e}, max |DP - path-sum| = {worst_path:.2e})"
    );
}

/// Criterion 3: trace identity. |(1/n) Tr(dense W^k) - moment_trace(k)| <
/// 1e-10 for n=300, m=2, k=0..8; k=0 and k=1 moments are exactly 1 and 0.
#[test]
fn criterion_3_trace_identity() {
    let g = Graph::generate(300, 2, 4).unwrap();
    let w = dense(&g, OperatorKind::NormAdjacency);
    assert_eq!(moment_trace(&g, 0), 1.0, "k=0 moment must be exactly 1");
    assert_eq!(moment_trace(&g, 1), 0.0, "k=1 moment must be exactly 0");
    let mut wk = DenseMatrix::identity(300);
    let mut worst: f64 = 0.0;
    for k in 0..=8u32 {
        let mut trace = 0.0;
        for i in 0..300 {
            trace += wk.get(i, i);
        }
        let err = (trace / 300.0 - moment_trace(&g, k)).abs();
        worst = worst.max(err);
        assert!(err < 1e-10, "trace identity broken at k={k}: {err:e}");
        wk = wk.matmul(&w);
    }
    println!("acceptance criterion 3 (trace identity): PASS (max err = {worst:.2e})");
}

/// Criterion 4: Neumann tail compliance on the full grid, plus the exact
/// spot value tail_bound(1+1.5i, 1) = 4/3.
#[test]
fn criterion_4_neumann_tail_compliance() {
    let z_grid = [
        Complex64::new(1.0, 1.25),
        Complex64::new(1.0, 1.5),
        Complex64::new(3.0, 1.0),
    ];
    let k_grid = [1u32, 5, 20, 40];
    let mut cases = 0usize;
    let mut worst_ratio: f64 = 0.0;
    for n in [100u32, 500] {
        for seed in [1u64, 2] {
            let g = Graph::generate(n, 2, seed).unwrap();
            let spec = eigenvalues(&g, DEFAULT_DENSE_LIMIT).unwrap();
            for z in z_grid {
                let direct = stieltjes_direct(&spec, z).unwrap();
                for k in k_grid {
                    let series = stieltjes_neumann(&g, z, k).unwrap();
                    let err = (series.value - direct.value).norm();
                    let bound = series.tail_bound.unwrap();
                    worst_ratio = worst_ratio.max(err / bound);
                    cases += 1;
                    assert!(
                        err <= bound,
                        "tail bound violated: n={n} seed={seed} z={z} K={k} err={err:e} > {bound:e}"
                    );
                }
            }
        }
    }
    let spot = tail_bound(Complex64::new(1.0, 1.5), 1).unwrap();
    assert_eq!(
        spot,
        4.0 / 3.0,
        "tail_bound(1+1.5i, 1) must equal 4/3 exactly"
    );
    println!(
        "acceptance criterion 4 (Neumann tail compliance): PASS \
         ({cases}/{cases} cases within bound, worst err/bound = {worst_ratio:.3e})"
    );
}

/// Criterion 5: resolvent bound and Herglotz property on a 20-point grid in
/// the upper half-plane, including points outside the Neumann domain.
#[test]
fn criterion_5_resolvent_herglotz_bounds() {
    let mut grid = Vec::new();
    for re in [-1.0, 0.0, 0.5, 1.0, 2.0] {
        for im in [0.1, 0.5, 1.0, 2.0] {
            grid.push(Complex64::new(re, im));
        }
    }
    assert_eq!(grid.len(), 20);
    // Some grid points sit off the Neumann domain |1-z| > 1.
    assert!(grid.iter().any(|z| !paspectra_core::neumann::in_domain(*z)));

    let mut graphs = vec![Graph::generate(2, 4, 0).unwrap()];
    for m in [2u32, 3] {
        for n in [50u32, 200] {
            for seed in [0u64, 1] {
                graphs.push(Graph::generate(n, m, seed).unwrap());
            }
        }
    }
    let mut checked = 0usize;
    for g in &graphs {
        let spec = eigenvalues(g, DEFAULT_DENSE_LIMIT).unwrap();
        for &z in &grid {
            let eval = stieltjes_direct(&spec, z).unwrap();
            assert!(
                eval.value.norm() <= 1.0 / z.im + 1e-12,
                "resolvent bound violated at z={z}"
            );
            assert!(eval.value.im > 0.0, "Herglotz violated at z={z}");
            checked += 1;
        }
    }
    println!(
        "acceptance criterion 5 (resolvent/Herglotz bounds): PASS \
         ({checked} (graph, z) pairs)"
    );
}

/// Criterion 6: self-averaging. m=2, k=4, 30 seeds: std at n=4000 strictly
/// below 0.7x the std at n=500, and the truncated-vs-plain mean gap at
/// K = floor(log n) decreases from n=500 to n=4000. Runtime < 5 min.
#[test]
fn criterion_6_self_averaging() {
    let start = Instant::now();
    let cfg = StudyConfig {
        m: 2,
        n_list: vec![500, 4000],
        seeds: (0..30).collect(),
        k_list: vec![4],
        z_list: Vec::new(),
        k_rule: KRule::LogN,
        bins: 100,
        dense_limit: DEFAULT_DENSE_LIMIT,
    };
    let report = concentration_study(&cfg).unwrap();
    let row_500 = &report.rows[0];
    let row_4000 = &report.rows[1];
    assert_eq!((row_500.n, row_4000.n), (500, 4000));
    assert!(
        row_4000.std < 0.7 * row_500.std,
        "std did not shrink enough: {} vs 0.7 * {}",
        row_4000.std,
        row_500.std
    );
    assert!(
        row_4000.gap_mean < row_500.gap_mean,
        "truncation gap did not decrease: {} -> {}",
        row_500.gap_mean,
        row_4000.gap_mean
    );
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "runtime {elapsed:.1}s exceeds 5 min");
    println!(
        "acceptance criterion 6 (self-averaging): PASS \
         (std {:.3e} -> {:.3e} [ratio {:.3}], gap {:.3e} -> {:.3e}, K {} -> {}, {elapsed:.1}s)",
        row_500.std,
        row_4000.std,
        row_4000.std / row_500.std,
        row_500.gap_mean,
        row_4000.gap_mean,
        row_500.k_cap,
        row_4000.k_cap
    );
}

/// Criterion 7: stabilization of moments, ESD, and Stieltjes values across
/// n in {250, 1000, 4000} with 5 seeds averaged: all successive deltas
/// strictly decrease.
#[test]
fn criterion_7_moment_and_esd_stabilization() {
    let start = Instant::now();
    let cfg = StudyConfig {
        m: 2,
        n_list: vec![250, 1000, 4000],
        seeds: (0..5).collect(),
        k_list: vec![2, 3, 4],
        z_list: vec![Complex64::new(1.0, 1.5)],
        k_rule: KRule::LogN,
        bins: 100,
        dense_limit: DEFAULT_DENSE_LIMIT,
    };
    let report = convergence_study(&cfg).unwrap();
    assert_eq!(report.deltas.len(), 2);
    for (ki, &k) in cfg.k_list.iter().enumerate() {
        assert!(
            report.moment_deltas_decreasing[ki],
            "moment delta for k={k} not decreasing: {:?} -> {:?}",
            report.deltas[0].moment_delta[ki], report.deltas[1].moment_delta[ki]
        );
    }
    assert!(
        report.esd_deltas_decreasing,
        "ESD Kolmogorov deltas not decreasing: {:?} -> {:?}",
        report.deltas[0].esd_ks_delta, report.deltas[1].esd_ks_delta
    );
    assert!(
        report.stieltjes_deltas_decreasing[0],
        "Stieltjes delta at 1+1.5i not decreasing: {:?} -> {:?}",
        report.deltas[0].stieltjes_delta[0], report.deltas[1].stieltjes_delta[0]
    );
    let elapsed = start.elapsed().as_secs_f64();
    println!(
        "acceptance criterion 7 (moment/ESD stabilization): PASS \
         (moment deltas k=2: {:.3e} -> {:.3e}; KS: {:.3e} -> {:.3e}; \
          |m| delta: {:.3e} -> {:.3e}; {elapsed:.1}s)",
        report.deltas[0].moment_delta[0],
        report.deltas[1].moment_delta[0],
        report.deltas[0].esd_ks_delta,
        report.deltas[1].esd_ks_delta,
        report.deltas[0].stieltjes_delta[0],
        report.deltas[1].stieltjes_delta[0]
    );
}

/// Criterion 8: the n=2 closed-form micro-oracle.
#[test]
fn criterion_8_closed_form_micro_oracle() {
    let g = Graph::generate(2, 3, 0).unwrap();
    let spec = eigenvalues(&g, DEFAULT_DENSE_LIMIT).unwrap();
    assert!(spec.eigenvalues[0].abs() <= 1e-12);
    assert!((spec.eigenvalues[1] - 2.0).abs() <= 1e-12);

    let m_i = stieltjes_direct(&spec, Complex64::new(0.0, 1.0)).unwrap();
    let err_direct = (m_i.value - Complex64::new(0.2, 0.6)).norm();
    assert!(err_direct <= 1e-12, "m_2(i) error {err_direct:e}");

    let z = Complex64::new(2.0, 1.0);
    let series = stieltjes_neumann(&g, z, 60).unwrap();
    let exact = 0.5
        * (Complex64::new(1.0, 0.0) / (Complex64::new(0.0, 0.0) - z)
            + Complex64::new(1.0, 0.0) / (Complex64::new(2.0, 0.0) - z));
    let err_series = (series.value - exact).norm();
    let bound = series.tail_bound.unwrap();
    assert!(
        err_series <= bound,
        "Neumann value off closed form: {err_series:e} > {bound:e}"
    );
    println!(
        "acceptance criterion 8 (closed-form micro-oracle): PASS \
         (spectrum {{0, 2}}, |m_2(i) - (0.2+0.6i)| = {err_direct:.2e}, \
          Neumann K=60 err {err_series:.2e} <= {bound:.2e})"
    );
}

/// Criterion 9: Azuma and ball-size bound formulas against big-integer /
/// high-precision recomputation on 20 random tuples, plus spot values.
#[test]
fn criterion_9_bound_formulas() {
    assert_eq!(n_ball_bound(2, 1).unwrap(), 7, "N_2(2) must equal 7");
    let c = 2.0 * 3.0 * n_ball_bound(1, 0).unwrap() as f64;
    assert_eq!(c, 12.0, "c_(0,2)(1) must equal 12");

    let mut state = 0x5eed_5eedu64;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        state >> 17
    };
    for case in 0..20 {
        let k = 1 + next() % 40;
        let r = (next() % 10) as u32;
        let n = 10 + next() % 50_000;
        let eps = (1 + next() % 2000) as f64 / 700.0;
        let m = 2 + (next() % 3) as u32;
        let sup = (1 + next() % 4) as f64 / 2.0;

        // Integer part: exact big-integer geometric sum.
        let exact = n_ball_bound(k, r).unwrap();
        let mut big = BigUint::from(0u32);
        for j in 0..=(r + 1) {
            big += BigUint::from(k).pow(j);
        }
        assert_eq!(BigUint::from(exact), big, "case {case}: N mismatch");

        // Bound: recompute with exact integer c^2 and a different grouping.
        let got = azuma_bound(n, eps, r, m, k, sup).unwrap();
        let c_sq: f64 = (BigUint::from(4u32 * (m + 1) * (m + 1)) * (&big * &big))
            .to_string()
            .parse()
            .unwrap();
        let expect = 2.0 * (-((eps * eps * n as f64) / (2.0 * c_sq * (sup * sup)))).exp();
        let tol = (1e-12 * expect).max(1e-300);
        assert!(
            (got - expect).abs() <= tol,
            "case {case}: azuma {got:e} vs {expect:e}"
        );
    }
    println!(
        "acceptance criterion 9 (Azuma/ball-bound formulas): PASS \
         (20 random tuples, spot values N_2(2)=7 and c_(0,2)(1)=12)"
    );
}
