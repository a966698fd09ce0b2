//! Assembles the textual artifacts: CSV tables and JSON reports. Every
//! artifact starts with (or embeds) the canonical configuration line so it
//! can be regenerated bit-identically. All reals carry 17 significant
//! digits; JSON objects serialize with sorted keys, so output bytes are a
//! pure function of the data.

use std::fmt::Write as _;

use paspectra_core::experiments::{ConcentrationReport, ConvergenceReport, KRule, StudyConfig};
use paspectra_core::neumann::LimitEstimate;
use paspectra_core::spectral::{SpectrumResult, StieltjesEval};
use serde_json::{json, Value};

use crate::complexfmt::format_complex;
use crate::numfmt;

fn header(echo: &str) -> String {
    format!("# paspectra {echo}\n")
}

pub fn spectrum_csv(spec: &SpectrumResult, echo: &str) -> String {
    let mut out = header(echo);
    out.push_str("index,eigenvalue\n");
    for (i, lambda) in spec.eigenvalues.iter().enumerate() {
        let _ = writeln!(out, "{},{}", i, numfmt::f(*lambda));
    }
    out
}

pub fn histogram_csv(mass: &[f64], echo: &str) -> String {
    let mut out = header(echo);
    out.push_str("bin_lo,bin_hi,mass\n");
    let bins = mass.len();
    for (i, m) in mass.iter().enumerate() {
        let lo = 2.0 * i as f64 / bins as f64;
        let hi = 2.0 * (i + 1) as f64 / bins as f64;
        let _ = writeln!(out, "{},{},{}", numfmt::f(lo), numfmt::f(hi), numfmt::f(*m));
    }
    out
}

pub fn spectrum_json(spec: &SpectrumResult, mass: Option<&[f64]>, echo: &str) -> String {
    let mut doc = json!({
        "config_line": echo,
        "n": spec.n,
        "m": spec.m,
        "seed": spec.seed,
        "tolerance": spec.tol,
        "raw_min": spec.raw_min,
        "raw_max": spec.raw_max,
        "eigenvalues": spec.eigenvalues,
    });
    if let Some(mass) = mass {
        doc["histogram"] = json!(mass);
    }
    pretty(doc)
}

pub fn stieltjes_csv(evals: &[StieltjesEval], echo: &str) -> String {
    let mut out = header(echo);
    out.push_str("re_z,im_z,re_m,im_m,method,K,tail_bound\n");
    for e in evals {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            numfmt::f(e.z.re),
            numfmt::f(e.z.im),
            numfmt::f(e.value.re),
            numfmt::f(e.value.im),
            e.method.as_str(),
            numfmt::opt_u32(e.truncation),
            numfmt::opt_f(e.tail_bound),
        );
    }
    out
}

pub fn stieltjes_json(evals: &[StieltjesEval], echo: &str) -> String {
    let rows: Vec<Value> = evals
        .iter()
        .map(|e| {
            json!({
                "z": format_complex(e.z),
                "re_z": e.z.re,
                "im_z": e.z.im,
                "re_m": e.value.re,
                "im_m": e.value.im,
                "method": e.method.as_str(),
                "K": e.truncation,
                "tail_bound": e.tail_bound,
            })
        })
        .collect();
    pretty(json!({ "config_line": echo, "evaluations": rows }))
}

pub fn moments_csv(moments: &[f64], echo: &str) -> String {
    let mut out = header(echo);
    out.push_str("k,moment\n");
    for (k, m) in moments.iter().enumerate() {
        let _ = writeln!(out, "{},{}", k, numfmt::f(*m));
    }
    out
}

pub fn moments_json(moments: &[f64], echo: &str) -> String {
    pretty(json!({ "config_line": echo, "moments": moments }))
}

pub fn limit_csv(estimates: &[LimitEstimate], echo: &str) -> String {
    let mut out = header(echo);
    out.push_str("n,re_z,im_z,K,mean_re,mean_im,stderr_re,stderr_im,n_seeds,tail_bound\n");
    for est in estimates {
        for row in &est.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                row.n,
                numfmt::f(est.z.re),
                numfmt::f(est.z.im),
                est.k,
                numfmt::f(row.mean.re),
                numfmt::f(row.mean.im),
                numfmt::f(row.stderr_re),
                numfmt::f(row.stderr_im),
                row.n_seeds,
                numfmt::f(est.tail_bound),
            );
        }
    }
    out
}

pub fn limit_json(estimates: &[LimitEstimate], echo: &str) -> String {
    let blocks: Vec<Value> = estimates
        .iter()
        .map(|est| {
            json!({
                "z": format_complex(est.z),
                "K": est.k,
                "tail_bound": est.tail_bound,
                "estimate": { "re": est.estimate().re, "im": est.estimate().im },
                "rows": est.rows.iter().map(|r| json!({
                    "n": r.n,
                    "mean_re": r.mean.re,
                    "mean_im": r.mean.im,
                    "stderr_re": r.stderr_re,
                    "stderr_im": r.stderr_im,
                    "n_seeds": r.n_seeds,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    pretty(json!({ "config_line": echo, "estimates": blocks }))
}

fn config_json(cfg: &StudyConfig) -> Value {
    json!({
        "m": cfg.m,
        "n_list": cfg.n_list,
        "seeds": cfg.seeds,
        "k_list": cfg.k_list,
        "z_list": cfg.z_list.iter().map(|z| format_complex(*z)).collect::<Vec<_>>(),
        "k_rule": match cfg.k_rule {
            KRule::LogN => "logn".to_string(),
            KRule::Fixed(k) => format!("fixed:{k}"),
        },
        "bins": cfg.bins,
        "dense_limit": cfg.dense_limit,
    })
}

pub fn concentration_csv(report: &ConcentrationReport, echo: &str) -> String {
    let mut out = header(echo);
    out.push_str(
        "n,k,K,mean,std,stderr,mean_trunc,std_trunc,stderr_trunc,gap_mean,azuma_eps,azuma_bound\n",
    );
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.k,
            r.k_cap,
            numfmt::f(r.mean),
            numfmt::f(r.std),
            numfmt::f(r.stderr),
            numfmt::f(r.mean_truncated),
            numfmt::f(r.std_truncated),
            numfmt::f(r.stderr_truncated),
            numfmt::f(r.gap_mean),
            numfmt::f(r.azuma_eps),
            numfmt::opt_f(r.azuma_bound),
        );
    }
    out
}

pub fn concentration_json(report: &ConcentrationReport, echo: &str) -> String {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "k": r.k,
                "K": r.k_cap,
                "mean": r.mean,
                "std": r.std,
                "stderr": r.stderr,
                "mean_trunc": r.mean_truncated,
                "std_trunc": r.std_truncated,
                "stderr_trunc": r.stderr_truncated,
                "gap_mean": r.gap_mean,
                "azuma_eps": r.azuma_eps,
                "azuma_bound": r.azuma_bound,
            })
        })
        .collect();
    pretty(json!({
        "config_line": echo,
        "config": config_json(&report.config),
        "rows": rows,
        "std_nonincreasing": report.std_nonincreasing
            .iter().map(|(k, ok)| json!({"k": k, "ok": ok})).collect::<Vec<_>>(),
        "gap_nonincreasing": report.gap_nonincreasing
            .iter().map(|(k, ok)| json!({"k": k, "ok": ok})).collect::<Vec<_>>(),
    }))
}

pub fn convergence_moments_csv(report: &ConvergenceReport, echo: &str) -> String {
    let mut out = header(echo);
    out.push_str("n,k,mean,std\n");
    for row in &report.sizes {
        for (ki, &k) in report.config.k_list.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                row.n,
                k,
                numfmt::f(row.moment_mean[ki]),
                numfmt::f(row.moment_std[ki]),
            );
        }
    }
    out
}

pub fn convergence_esd_csv(report: &ConvergenceReport, echo: &str) -> String {
    let mut out = header(echo);
    out.push_str("n,bin_lo,bin_hi,mass\n");
    let bins = report.config.bins;
    for row in &report.sizes {
        for (i, m) in row.hist_mean.iter().enumerate() {
            let lo = 2.0 * i as f64 / bins as f64;
            let hi = 2.0 * (i + 1) as f64 / bins as f64;
            let _ = writeln!(
                out,
                "{},{},{},{}",
                row.n,
                numfmt::f(lo),
                numfmt::f(hi),
                numfmt::f(*m)
            );
        }
    }
    out
}

pub fn convergence_stieltjes_csv(report: &ConvergenceReport, echo: &str) -> String {
    let mut out = header(echo);
    out.push_str("n,re_z,im_z,mean_re,mean_im,stderr_re,stderr_im\n");
    for row in &report.sizes {
        for (zi, &z) in report.config.z_list.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                row.n,
                numfmt::f(z.re),
                numfmt::f(z.im),
                numfmt::f(row.stieltjes_mean[zi].re),
                numfmt::f(row.stieltjes_mean[zi].im),
                numfmt::f(row.stieltjes_stderr_re[zi]),
                numfmt::f(row.stieltjes_stderr_im[zi]),
            );
        }
    }
    out
}

pub fn convergence_deltas_csv(report: &ConvergenceReport, echo: &str) -> String {
    let mut out = header(echo);
    out.push_str("n_lo,n_hi,metric,key,delta\n");
    for d in &report.deltas {
        for (ki, &k) in report.config.k_list.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},moment,{},{}",
                d.n_lo,
                d.n_hi,
                k,
                numfmt::f(d.moment_delta[ki])
            );
        }
        let _ = writeln!(
            out,
            "{},{},esd_ks,,{}",
            d.n_lo,
            d.n_hi,
            numfmt::f(d.esd_ks_delta)
        );
        for (zi, &z) in report.config.z_list.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},stieltjes,{},{}",
                d.n_lo,
                d.n_hi,
                format_complex(z),
                numfmt::f(d.stieltjes_delta[zi])
            );
        }
    }
    out
}

pub fn convergence_json(report: &ConvergenceReport, echo: &str) -> String {
    let sizes: Vec<Value> = report
        .sizes
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "moment_mean": row.moment_mean,
                "moment_std": row.moment_std,
                "stieltjes_mean": row.stieltjes_mean.iter()
                    .map(|z| json!({"re": z.re, "im": z.im})).collect::<Vec<_>>(),
                "stieltjes_stderr_re": row.stieltjes_stderr_re,
                "stieltjes_stderr_im": row.stieltjes_stderr_im,
                "hist_mean": row.hist_mean,
            })
        })
        .collect();
    let deltas: Vec<Value> = report
        .deltas
        .iter()
        .map(|d| {
            json!({
                "n_lo": d.n_lo,
                "n_hi": d.n_hi,
                "moment_delta": d.moment_delta,
                "esd_ks_delta": d.esd_ks_delta,
                "stieltjes_delta": d.stieltjes_delta,
            })
        })
        .collect();
    pretty(json!({
        "config_line": echo,
        "config": config_json(&report.config),
        "sizes": sizes,
        "deltas": deltas,
        "moment_deltas_decreasing": report.moment_deltas_decreasing,
        "esd_deltas_decreasing": report.esd_deltas_decreasing,
        "stieltjes_deltas_decreasing": report.stieltjes_deltas_decreasing,
    }))
}

/// Dense-matrix CSV export (row-major, 17 significant digits); debugging aid.
pub fn dense_csv(matrix: &paspectra_core::dense::DenseMatrix, echo: &str) -> String {
    let mut out = header(echo);
    for i in 0..matrix.rows() {
        let row = matrix.row(i);
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            out.push_str(&numfmt::f(*v));
            first = false;
        }
        out.push('\n');
    }
    out
}

fn pretty(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use paspectra_core::graph::Graph;
    use paspectra_core::spectral::eigenvalues;
    use paspectra_core::DEFAULT_DENSE_LIMIT;

    #[test]
    fn spectrum_csv_shape() {
        let g = Graph::generate(10, 2, 1).unwrap();
        let spec = eigenvalues(&g, DEFAULT_DENSE_LIMIT).unwrap();
        let text = spectrum_csv(&spec, "spectrum in=g.pa");
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "# paspectra spectrum in=g.pa");
        assert_eq!(lines.next().unwrap(), "index,eigenvalue");
        assert_eq!(lines.count(), 10);
    }

    #[test]
    fn json_is_deterministic() {
        let g = Graph::generate(12, 2, 5).unwrap();
        let spec = eigenvalues(&g, DEFAULT_DENSE_LIMIT).unwrap();
        let a = spectrum_json(&spec, None, "echo");
        let b = spectrum_json(&spec, None, "echo");
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn dense_csv_is_rectangular() {
        let m = paspectra_core::dense::DenseMatrix::identity(3);
        let text = dense_csv(&m, "debug");
        let rows: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.split(',').count() == 3));
    }
}
