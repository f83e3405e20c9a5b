use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use approx::assert_relative_eq;

fn weaksol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weaksol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_table(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records()
        .map(|rec| rec.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn lookup(rows: &[Vec<String>], name: &str) -> f64 {
    rows.iter().find(|r| r[0] == name).unwrap()[1].parse().unwrap()
}

#[test]
fn construct_writes_three_files_with_closed_form_constants() {
    let dir = tempfile::tempdir().unwrap();
    let out = weaksol(&["construct", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    for f in ["enumeration.csv", "schedule.csv", "constants.csv"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
    let rows = read_table(&dir.path().join("constants.csv"));
    let c = 1.0 / (1.0 - 0.25f64.powf(0.25));
    let lambda = 20f64.ln();
    assert_relative_eq!(lookup(&rows, "C"), c, max_relative = 1e-14);
    assert_relative_eq!(lookup(&rows, "lambda"), lambda, max_relative = 1e-14);
    assert_relative_eq!(lookup(&rows, "C_tilde"), c * lambda.powf(-5.0 / 6.0), max_relative = 1e-14);
    assert_eq!(read_table(&dir.path().join("enumeration.csv")).len(), 4);
}

#[test]
fn config_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = weaksol(&["construct", "--out", d, "-D", "domain.radius=0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("radius must be < 1/e"), "{}", stderr(&o));

    let o = weaksol(&["construct", "--out", d, "-D", "schedule.ratio=1.0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ratio must be in (0,1)"), "{}", stderr(&o));

    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "[domain]\nradius = 0.05\nfoo = 1\n").unwrap();
    let o = weaksol(&["construct", "--out", d, "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("foo"), "{}", stderr(&o));
}

#[test]
fn sample_masks_singular_nodes_and_keeps_unit_modulus() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    // an odd grid has a node at the origin, which is p_1
    let o = weaksol(&["sample", "--grid", "5", "--out", d]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = read_table(&dir.path().join("grid.csv"));
    let origin = rows.iter().find(|r| r[0] == "0.0" && r[1] == "0.0").expect("origin row");
    assert!(origin[2..].iter().all(|c| c == "masked"));
    let mut unmasked = 0;
    for r in &rows {
        if r[2] == "masked" {
            continue;
        }
        unmasked += 1;
        let u1: f64 = r[2].parse().unwrap();
        let u2: f64 = r[3].parse().unwrap();
        assert!((u1.hypot(u2) - 1.0).abs() <= 1e-12);
    }
    assert!(unmasked > 0);

    let o = weaksol(&["sample", "--grid", "2", "--out", d]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = read_table(&dir.path().join("grid.csv"));
    assert!(rows.len() <= 4);
    assert!(rows.iter().all(|r| r[2] != "masked"));
}

#[test]
fn probe_sweeps_a_full_period() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = weaksol(&["probe", "--point-index", "1", "-D", "schedule.n_terms=1", "--out", d]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = read_table(&dir.path().join("probe.csv"));
    assert_eq!(rows.len(), 1000);
    let summary = read_table(&dir.path().join("probe_summary.csv"));
    assert!(lookup(&summary, "min_u1") <= -0.999);
    assert!(lookup(&summary, "max_u1") >= 0.999);

    let o = weaksol(&["probe", "--point-index", "1", "--t-range", "10:12", "--out", d]);
    assert!(o.status.success());
    let summary = read_table(&dir.path().join("probe_summary.csv"));
    let w = summary.iter().find(|r| r[0] == "warning").unwrap();
    assert!(!w[1].is_empty());

    let o = weaksol(&["probe", "--point-index", "1", "--t-range", "0.5:8", "--out", d]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("t must be >= 1"), "{}", stderr(&o));
}

#[test]
fn verify_passes_and_fails_under_fault_injection() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = weaksol(&["verify", "--out", d]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let first = fs::read(dir.path().join("verify_report.csv")).unwrap();

    let o = weaksol(&["verify", "--out", d]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(dir.path().join("verify_report.csv")).unwrap(), first);

    let o = weaksol(&["verify", "--fault-inject", "flip-rhs-sign", "--out", d]);
    assert_eq!(o.status.code(), Some(1));
    let rows = read_table(&dir.path().join("verify_report.csv"));
    let weak: Vec<_> = rows.iter().filter(|r| r[0].starts_with("weak_") && r[0] != "weak_zero_amplitude").collect();
    assert!(!weak.is_empty());
    assert!(weak.iter().all(|r| r[1] == "false"));
    let unit = rows.iter().find(|r| r[0] == "unit_circle").unwrap();
    assert_eq!(unit[1], "true");
}

#[test]
fn report_echo_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = weaksol(&[
        "report", "--out", d, "--seed", "7", "-D", "suite.weak=false", "-D", "suite.convergence=false",
        "-D", "suite.lemma1=false",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let echo = fs::read_to_string(dir.path().join("config_echo.toml")).unwrap();
    let cfg = weaksol::cli::RunConfig::from_toml_str(&echo, &[]).unwrap();
    assert_eq!(cfg.seed, 7);
    assert!(!cfg.suite.weak);
    assert_eq!(cfg.echo(), echo);
}
