//! End-to-end tests of the binary: golden help files, exit codes with
//! machine-readable errors, file-format contracts, and bit-identical
//! regeneration of outputs from their echoed configuration.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_paspectra"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn help_matches_golden_files() {
    let cases = [
        (vec!["--help"], "help_main.txt"),
        (vec!["generate", "--help"], "help_generate.txt"),
        (vec!["spectrum", "--help"], "help_spectrum.txt"),
        (vec!["stieltjes", "--help"], "help_stieltjes.txt"),
        (vec!["moments", "--help"], "help_moments.txt"),
        (vec!["ball", "--help"], "help_ball.txt"),
        (vec!["concentrate", "--help"], "help_concentrate.txt"),
        (vec!["converge", "--help"], "help_converge.txt"),
    ];
    for (args, golden) in cases {
        let out = run(&args);
        assert!(out.status.success(), "{args:?} failed");
        let expected = std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR"))
                .join("tests/golden")
                .join(golden),
        )
        .unwrap_or_else(|_| panic!("missing golden file {golden}"));
        assert_eq!(stdout(&out), expected, "help text changed for {args:?}");
    }
}

#[test]
fn generate_writes_contracted_header_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.pa");
    let b = dir.path().join("b.pa");
    let out = run(&[
        "generate",
        "--n",
        "1000",
        "--m",
        "2",
        "--seed",
        "7",
        "--out",
        a.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), a.to_str().unwrap());
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("#pa n=1000 m=2 seed=7\n"));

    let out2 = run(&[
        "generate",
        "--n",
        "1000",
        "--m",
        "2",
        "--seed",
        "7",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert!(out2.status.success());
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn generate_rejects_small_parameters_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "generate",
        "--n",
        "1",
        "--m",
        "2",
        "--seed",
        "0",
        "--out",
        dir.path().join("x.pa").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.lines().count() == 1, "want one-line error, got: {err}");
    assert!(err.contains("\"error\":\"domain\""));

    let out = run(&[
        "generate",
        "--n",
        "10",
        "--m",
        "1",
        "--seed",
        "0",
        "--out",
        dir.path().join("y.pa").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_flags_exit_2() {
    let out = run(&["generate", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("\"error\":\"usage\""));
    let out = run(&["explode"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectrum_csv_and_regeneration() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.pa");
    run(&[
        "generate",
        "--n",
        "120",
        "--m",
        "2",
        "--seed",
        "3",
        "--out",
        g.to_str().unwrap(),
    ]);
    let s1 = dir.path().join("s1.csv");
    let s2 = dir.path().join("s2.csv");
    let h = dir.path().join("h.csv");
    let out = run(&[
        "spectrum",
        "--in",
        g.to_str().unwrap(),
        "--out",
        s1.to_str().unwrap(),
        "--hist",
        h.to_str().unwrap(),
        "--bins",
        "50",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    run(&[
        "spectrum",
        "--in",
        g.to_str().unwrap(),
        "--out",
        s2.to_str().unwrap(),
        "--bins",
        "50",
    ]);
    let t1 = std::fs::read_to_string(&s1).unwrap();
    let t2 = std::fs::read_to_string(&s2).unwrap();
    assert_eq!(t1, t2, "spectrum output must be reproducible");
    assert!(t1.lines().nth(1).unwrap().starts_with("index,eigenvalue"));
    assert_eq!(t1.lines().count(), 2 + 120);
    let hist = std::fs::read_to_string(&h).unwrap();
    assert!(hist
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("bin_lo,bin_hi,mass"));
    assert_eq!(hist.lines().count(), 2 + 50);
}

#[test]
fn stieltjes_neumann_matches_direct_within_tail_bound() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.pa");
    run(&[
        "generate",
        "--n",
        "150",
        "--m",
        "2",
        "--seed",
        "11",
        "--out",
        g.to_str().unwrap(),
    ]);

    let neu = dir.path().join("neu.csv");
    let out = run(&[
        "stieltjes",
        "--in",
        g.to_str().unwrap(),
        "--z",
        "1+1.5i",
        "--method",
        "neumann",
        "--eps",
        "1e-6",
        "--out",
        neu.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let row = std::fs::read_to_string(&neu).unwrap();
    let row = row.lines().nth(2).unwrap().to_string();
    let fields: Vec<&str> = row.split(',').collect();
    let (re_n, im_n): (f64, f64) = (fields[2].parse().unwrap(), fields[3].parse().unwrap());
    let k: u32 = fields[5].parse().unwrap();
    let tail: f64 = fields[6].parse().unwrap();
    // required_K(1+1.5i, 1e-6): smallest K with 1.5^-K / 0.5 <= 1e-6.
    assert_eq!(k, 36);
    assert!(tail <= 1e-6);

    let dir_csv = dir.path().join("dir.csv");
    run(&[
        "stieltjes",
        "--in",
        g.to_str().unwrap(),
        "--z",
        "1+1.5i",
        "--method",
        "direct",
        "--out",
        dir_csv.to_str().unwrap(),
    ]);
    let drow = std::fs::read_to_string(&dir_csv).unwrap();
    let drow = drow.lines().nth(2).unwrap().to_string();
    let dfields: Vec<&str> = drow.split(',').collect();
    let (re_d, im_d): (f64, f64) = (dfields[2].parse().unwrap(), dfields[3].parse().unwrap());
    assert_eq!(dfields[5], "", "direct rows leave K empty");
    assert_eq!(dfields[6], "", "direct rows leave tail_bound empty");

    let err = ((re_n - re_d).powi(2) + (im_n - im_d).powi(2)).sqrt();
    assert!(
        err <= tail,
        "cross-method error {err:e} above tail {tail:e}"
    );
}

#[test]
fn stieltjes_rejects_off_domain_z_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.pa");
    run(&[
        "generate",
        "--n",
        "50",
        "--m",
        "2",
        "--seed",
        "0",
        "--out",
        g.to_str().unwrap(),
    ]);
    let out = run(&[
        "stieltjes",
        "--in",
        g.to_str().unwrap(),
        "--z",
        "1+0.5i",
        "--method",
        "neumann",
        "--K",
        "10",
        "--out",
        dir.path().join("x.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.contains("z outside Neumann domain |1-z|>1"), "{err}");
    assert!(!std::path::Path::new(&dir.path().join("x.csv")).exists());
}

#[test]
fn stieltjes_flag_combinations_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.pa");
    run(&[
        "generate",
        "--n",
        "50",
        "--m",
        "2",
        "--seed",
        "0",
        "--out",
        g.to_str().unwrap(),
    ]);
    let out_path = dir.path().join("x.csv");
    // neumann needs exactly one of K/eps.
    for extra in [vec![], vec!["--K", "5", "--eps", "1e-3"]] {
        let mut args = vec![
            "stieltjes",
            "--in",
            g.to_str().unwrap(),
            "--z",
            "2+i",
            "--method",
            "neumann",
            "--out",
            out_path.to_str().unwrap(),
        ];
        args.extend(extra.iter().copied());
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    }
    // K on a direct run is a usage error.
    let out = run(&[
        "stieltjes",
        "--in",
        g.to_str().unwrap(),
        "--z",
        "2+i",
        "--K",
        "5",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stieltjes_ensemble_emits_limit_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("limit.csv");
    let out = run(&[
        "stieltjes",
        "--m",
        "2",
        "--n-list",
        "30,60",
        "--seed-range",
        "0:4",
        "--z",
        "1+1.5i",
        "--method",
        "neumann",
        "--K",
        "12",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines().skip(1);
    assert_eq!(
        lines.next().unwrap(),
        "n,re_z,im_z,K,mean_re,mean_im,stderr_re,stderr_im,n_seeds,tail_bound"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("30,"));
    assert!(rows[1].starts_with("60,"));
    assert!(rows.iter().all(|r| r.split(',').count() == 10));
    assert!(rows.iter().all(|r| r.split(',').nth(8) == Some("4")));
}

#[test]
fn moments_first_two_are_one_and_zero() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.pa");
    run(&[
        "generate",
        "--n",
        "80",
        "--m",
        "3",
        "--seed",
        "2",
        "--out",
        g.to_str().unwrap(),
    ]);
    let m = dir.path().join("m.csv");
    let out = run(&[
        "moments",
        "--in",
        g.to_str().unwrap(),
        "--k-max",
        "6",
        "--out",
        m.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&m).unwrap();
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 7);
    let first: f64 = rows[0].split(',').nth(1).unwrap().parse().unwrap();
    let second: f64 = rows[1].split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(first, 1.0);
    assert_eq!(second, 0.0);
}

#[test]
fn ball_dump_contract() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.pa");
    run(&[
        "generate",
        "--n",
        "2",
        "--m",
        "3",
        "--seed",
        "0",
        "--out",
        g.to_str().unwrap(),
    ]);
    let b = dir.path().join("ball.txt");
    let out = run(&[
        "ball",
        "--in",
        g.to_str().unwrap(),
        "--root",
        "1",
        "--r",
        "1",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&b).unwrap(),
        "#ball root=1 r=1\nv 1 3\nv 2 3\ne 1 2 3\n"
    );
    // Out-of-range root is a precondition failure.
    let out = run(&[
        "ball",
        "--in",
        g.to_str().unwrap(),
        "--root",
        "5",
        "--r",
        "1",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn corrupt_graph_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pa");
    let out_csv = dir.path().join("out.csv");

    std::fs::write(&bad, "#pa n=6 m=2 seed=0\n5 5 1\n").unwrap();
    let out = run(&[
        "spectrum",
        "--in",
        bad.to_str().unwrap(),
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("self-loop forbidden"),
        "{}",
        stderr(&out)
    );

    std::fs::write(&bad, "#pa n=6 m=2 seed=0\n1 2 2\n").unwrap();
    let out = run(&[
        "spectrum",
        "--in",
        bad.to_str().unwrap(),
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("inconsistent graph file"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn dense_limit_env_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.pa");
    run(&[
        "generate",
        "--n",
        "60",
        "--m",
        "2",
        "--seed",
        "1",
        "--out",
        g.to_str().unwrap(),
    ]);
    let out = bin()
        .args([
            "spectrum",
            "--in",
            g.to_str().unwrap(),
            "--out",
            dir.path().join("s.csv").to_str().unwrap(),
        ])
        .env("PASPECTRA_DENSE_LIMIT", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("dense"), "{}", stderr(&out));
}

#[test]
fn concentrate_study_files_and_jobs_independence() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    let base = [
        "concentrate",
        "--m",
        "2",
        "--n-list",
        "30,60",
        "--seed-range",
        "0:10",
        "--k-list",
        "2",
        "--k-rule",
        "logn",
    ];
    let mut a1 = base.to_vec();
    a1.extend(["--out-dir", dir1.path().to_str().unwrap(), "--jobs", "1"]);
    let mut a2 = base.to_vec();
    a2.extend(["--out-dir", dir2.path().to_str().unwrap(), "--jobs", "2"]);
    let o1 = run(&a1);
    let o2 = run(&a2);
    assert!(o1.status.success(), "{}", stderr(&o1));
    assert!(o2.status.success(), "{}", stderr(&o2));
    let paths1: Vec<String> = stdout(&o1).lines().map(String::from).collect();
    let paths2: Vec<String> = stdout(&o2).lines().map(String::from).collect();
    assert_eq!(paths1.len(), 2);
    // Same config hash in the file names, identical bytes despite --jobs.
    for (p1, p2) in paths1.iter().zip(&paths2) {
        assert_eq!(
            Path::new(p1).file_name(),
            Path::new(p2).file_name(),
            "hash-stable file names"
        );
        assert_eq!(
            std::fs::read(p1).unwrap(),
            std::fs::read(p2).unwrap(),
            "study output depends on --jobs"
        );
    }
    let json = std::fs::read_to_string(&paths1[0]).unwrap();
    assert!(json.contains("\"config_line\""));
    assert!(json.contains("\"azuma_bound\""));
}

#[test]
fn converge_study_emits_all_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "converge",
        "--m",
        "2",
        "--n-list",
        "20,40,80",
        "--seed-range",
        "0:5",
        "--k-list",
        "2,3",
        "--z-list",
        "1+1.5i",
        "--bins",
        "16",
        "--out-dir",
        dir.path().to_str().unwrap(),
        "--jobs",
        "1",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let paths: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(paths.len(), 5);
    let names: Vec<&str> = paths
        .iter()
        .map(|p| Path::new(p).file_name().unwrap().to_str().unwrap())
        .collect();
    assert!(names[0].starts_with("convergence_") && names[0].ends_with(".json"));
    assert!(names.iter().any(|n| n.starts_with("convergence_moments_")));
    assert!(names.iter().any(|n| n.starts_with("convergence_esd_")));
    assert!(names
        .iter()
        .any(|n| n.starts_with("convergence_stieltjes_")));
    assert!(names.iter().any(|n| n.starts_with("convergence_deltas_")));
    let deltas = std::fs::read_to_string(&paths[4]).unwrap();
    assert!(deltas
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("n_lo,n_hi,metric,key,delta"));
    // 2 successive pairs x (2 moments + 1 esd + 1 stieltjes) rows.
    assert_eq!(deltas.lines().count(), 2 + 2 * 4);
}

#[test]
fn converge_requires_three_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "converge",
        "--m",
        "2",
        "--n-list",
        "40",
        "--seed-range",
        "0:5",
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("3 sizes"), "{}", stderr(&out));
}
