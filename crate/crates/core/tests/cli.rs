//! The `elastic-bem` binary: exit codes, CSV layout, fixtures.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use elastic_bem::cli::RunConfig;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_elastic-bem"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn every_fixture_parses() {
    let names = [
        "ex1_series.json",
        "ex2_low_frequency.json",
        "ex3_high_frequency.json",
        "ex4_star.json",
        "ex5_multiscale.json",
        "ex6_corner.json",
        "ex7_contrast.json",
    ];
    for name in names {
        let c = RunConfig::load(&fixture(name), &[]).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(c.nodes().unwrap() >= 64, "{name}");
        assert!(!c.description.is_empty(), "{name}");
    }
    let count = fs::read_dir(fixture("")).unwrap().count();
    assert_eq!(count, names.len());
}

#[test]
fn solve_writes_the_boundary_solution() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let r = run(&[
        "solve",
        "--config",
        fixture("ex1_series.json").to_str().unwrap(),
        "--out",
        out,
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = fs::read_to_string(dir.path().join("solution.csv")).unwrap();
    assert!(text.starts_with("# "));
    assert_eq!(text.lines().nth(1).unwrap(), "loop,index,x,y,re_u1,im_u1,re_u2,im_u2");
    assert_eq!(data_rows(&text).len(), 64);
    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let row: Vec<&str> = data_rows(&summary)[0].split(',').collect();
    assert_eq!(row[0], "64");
    assert!(row[2].parse::<f64>().unwrap() <= 1e-10);
}

#[test]
fn thread_count_does_not_change_the_output() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let config = fixture("ex7_contrast.json");
    for (dir, threads) in [(&a, "1"), (&b, "3")] {
        let r = run(&[
            "--threads",
            threads,
            "solve",
            "--config",
            config.to_str().unwrap(),
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(r.status.success());
    }
    let read = |d: &tempfile::TempDir| fs::read(d.path().join("solution.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
}

#[test]
fn missing_omega_exits_with_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        r#"{ "medium": { "mu": 1 }, "geometry": { "curve": "kite", "N": 64 } }"#,
    )
    .unwrap();
    let r = run(&[
        "solve",
        "--config",
        path.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("omega"));
}

#[test]
fn zero_eta_is_rejected_before_solving() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(&[
        "solve",
        "--config",
        fixture("ex7_contrast.json").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--override",
        "solver.eta=0",
    ]);
    assert_eq!(r.status.code(), Some(2));
    assert!(!dir.path().join("solution.csv").exists());
}

#[test]
fn convergence_table_layout() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(&[
        "convergence",
        "--config",
        fixture("ex7_contrast.json").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--override",
        "study.N=[32,48,64]",
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
    assert_eq!(
        text.lines().nth(1).unwrap(),
        "N,omega,l2_error,linf_error,residual,order"
    );
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 3);
    assert!(rows[0].ends_with(','));
    let order: f64 = rows[2].rsplit(',').next().unwrap().parse().unwrap();
    assert!(order > 1.0, "{order}");
}

#[test]
fn fieldmap_masks_the_obstacle_and_a_collar() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(&[
        "fieldmap",
        "--config",
        fixture("ex4_star.json").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "--override",
        "geometry.N=64",
        "--override",
        r#"output.grid={"x":[-3,3],"y":[-3,3],"nx":13,"ny":13}"#,
    ]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = fs::read_to_string(dir.path().join("field.csv")).unwrap();
    assert_eq!(text.lines().nth(1).unwrap(), "x,y,mask,re_u1,im_u1,re_u2,im_u2");
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 169);
    let centre = rows.iter().find(|l| l.starts_with("0e0,0e0,")).unwrap();
    assert!(centre.contains(",1,NaN"));
    let corner: Vec<f64> = rows[0].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(corner[2], 0.0);
    assert!(corner[3..].iter().all(|v| v.is_finite()));
}

#[test]
fn selftest_passes_and_reports_counts() {
    let r = run(&["selftest", "--config", fixture("ex1_series.json").to_str().unwrap()]);
    assert!(r.status.success());
    let text = String::from_utf8_lossy(&r.stdout);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4);
    assert!(text.contains("checks passed"));
}

#[test]
fn perturbed_moment_fails_the_selftest_by_name() {
    let r = run(&["selftest", "--perturb-moment", "I3:5"]);
    assert_eq!(r.status.code(), Some(1));
    let text = String::from_utf8_lossy(&r.stdout);
    assert!(text.contains("FAIL moment-table"));
    assert!(text.contains("I3[5]"));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(run(&["mesh"]).status.code(), Some(2));
}
