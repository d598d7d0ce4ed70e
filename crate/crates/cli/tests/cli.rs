use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn planescat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planescat")).args(args).output().unwrap()
}

fn run(name: &str, out: &Path, extra: &[&str]) -> (Output, String) {
    let cfg = scenario(name);
    let mut args = vec!["run", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let output = planescat(&args);
    let stem = name.trim_end_matches(".cfg");
    let csv = std::fs::read_to_string(out.join(format!("{stem}.csv"))).unwrap_or_default();
    (output, csv)
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect()
}

#[test]
fn bundled_scenarios_validate() {
    for entry in std::fs::read_dir(scenario("")).unwrap() {
        let path = entry.unwrap().path();
        let out = planescat(&["validate", path.to_str().unwrap()]);
        assert!(out.status.success(), "{}: {}", path.display(), String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn config_errors_exit_with_one_and_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("typo.cfg");
    std::fs::write(&cfg, "mode = transmission\n[medium]\nd_efff = 0.23\n").unwrap();
    for args in [vec!["validate", cfg.to_str().unwrap()], vec!["run", cfg.to_str().unwrap()]] {
        let out = planescat(&args);
        assert_eq!(out.status.code(), Some(1));
        assert!(String::from_utf8_lossy(&out.stderr).contains("line 3: medium.d_efff"));
    }
    for bad in [vec!["--tol=-1"], vec!["--tol", "abc"], vec!["--bogus"]] {
        let cfg = scenario("transmission.cfg");
        let mut args = vec!["run", cfg.to_str().unwrap()];
        args.extend(bad);
        assert_eq!(planescat(&args).status.code(), Some(1));
    }
}

#[test]
fn numerical_failure_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.cfg");
    std::fs::write(
        &cfg,
        "mode = single_atom_sweep\n[medium]\nz_plane = 0.4\nd_eff = 0.23\n[sweep]\nstart = 0\nstop = 0.1\nstep = 0.1\n[quad]\nmax_subdivisions = 1\nabs_tol = 1e-300\n",
    )
    .unwrap();
    let out = planescat(&["run", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap(), "--tol", "1e-15"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fig1_rate_peaks_at_plane_and_relaxes_at_edges() {
    let dir = tempfile::tempdir().unwrap();
    let (out, csv) = run("fig1.cfg", dir.path(), &["--svg"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning: skipped 0.4"));
    assert!(csv.contains("\nz_over_lambda,gamma_over_gamma0,delta_over_gamma0\n"));
    assert!(dir.path().join("fig1.svg").exists());
    let rows = rows(&csv);
    let peak = rows.iter().max_by(|a, b| a[1].total_cmp(&b[1])).unwrap();
    assert!((peak[0] - 0.4).abs() <= 0.0025 + 1e-9, "peak at {}", peak[0]);
    let (first, last) = (&rows[0], &rows[rows.len() - 1]);
    assert!((first[1] - 1.0).abs() < 0.1 && (last[1] - 1.0).abs() < 0.1, "{} {}", first[1], last[1]);
}

#[test]
fn fig4_ratio_is_unity_for_coincident_atoms() {
    let dir = tempfile::tempdir().unwrap();
    let (out, csv) = run("fig4.cfg", dir.path(), &[]);
    assert!(out.status.success());
    let rows = rows(&csv);
    let origin = rows.iter().min_by(|a, b| a[0].abs().total_cmp(&b[0].abs())).unwrap();
    assert!((origin[3] - 1.0).abs() < 1e-3);
    assert!(rows.iter().any(|r| r[0] > 0.5 && r[0] < 3.0 && r[3] > 1.0));
}

#[test]
fn transmission_is_a_single_row() {
    let dir = tempfile::tempdir().unwrap();
    let (out, csv) = run("transmission.cfg", dir.path(), &[]);
    assert!(out.status.success());
    let rows = rows(&csv);
    assert_eq!(rows.len(), 1);
    assert!((rows[0][1] - 0.32).abs() <= 0.01);
}

#[test]
fn csv_header_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let (_, csv) = run("trace.cfg", dir.path(), &["--tol", "1e-8"]);
    let echoed: String = csv
        .lines()
        .filter_map(|l| l.strip_prefix("# "))
        .filter(|l| !l.starts_with("skipped"))
        .map(|l| format!("{l}\n"))
        .collect();
    assert!(echoed.contains("rel_tol = 1e-8"));
    let replay_dir = dir.path().join("replay");
    std::fs::create_dir(&replay_dir).unwrap();
    let replay = replay_dir.join("trace.cfg");
    std::fs::write(&replay, echoed).unwrap();
    let out = planescat(&["run", replay.to_str().unwrap(), "--out", replay_dir.to_str().unwrap()]);
    assert!(out.status.success());
    let again = std::fs::read_to_string(replay_dir.join("trace.csv")).unwrap();
    assert_eq!(csv, again);
}
