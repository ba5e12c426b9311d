use std::path::Path;
use std::process::{Command, Output};
use torsionflow_cli::report::{RunReport, CSV_HEADER};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_torsionflow"))
}

fn run_config(dir: &Path, json: &str) -> Output {
    let cfg = dir.join("config.json");
    std::fs::write(&cfg, json).unwrap();
    bin().args(["run", "--config"]).arg(&cfg).output().unwrap()
}

fn read_report(path: &Path) -> RunReport {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> (String, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn canonical_shrinker_csv() {
    let d = tempfile::tempdir().unwrap();
    let out = d.path().join("out");
    let json = format!(
        r#"{{"scenario":"su2_flow","params":{{"a":0.0,"c":-1.0,"s0":1.0,"dt":0.001,"t_end":0.2}},"output_dir":"{}"}}"#,
        out.display()
    );
    let o = run_config(d.path(), &json);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let (header, rows) = csv_rows(&out.join("su2_flow.csv"));
    assert_eq!(header, CSV_HEADER);
    assert_eq!(rows.len(), 201);
    for r in &rows {
        assert!((r[1] - (1.0 - 4.0 * r[0])).abs() <= 1e-10);
    }
    let text = std::fs::read_to_string(out.join("su2_flow.csv")).unwrap();
    let cell = text.lines().nth(1).unwrap().split(',').next().unwrap();
    assert_eq!(cell, "0.0000000000000000e0");
    let rep = read_report(&out.join("su2_flow.json"));
    assert_eq!(rep.status, "pass");
    assert_eq!((rep.cases, rep.passed, rep.wall_ms), (201, 201, 0));
}

#[test]
fn extinction_is_reported_as_halt() {
    let d = tempfile::tempdir().unwrap();
    let json = format!(
        r#"{{"scenario":"su2_flow","params":{{"dt":0.001,"t_end":1.0}},"output_dir":"{}"}}"#,
        d.path().display()
    );
    let o = run_config(d.path(), &json);
    assert_eq!(o.status.code(), Some(0));
    let rep = read_report(&d.path().join("su2_flow.json"));
    assert!(
        rep.status.starts_with("halted(extinction at t=0.25"),
        "{}",
        rep.status
    );
}

#[test]
fn normalized_flow_from_canonical_is_constant() {
    let d = tempfile::tempdir().unwrap();
    let json = format!(
        r#"{{"scenario":"su2_normalized_flow","params":{{"dt":0.01,"t_end":0.5}},"output_dir":"{}"}}"#,
        d.path().display()
    );
    assert_eq!(run_config(d.path(), &json).status.code(), Some(0));
    let (_, rows) = csv_rows(&d.path().join("su2_normalized_flow.csv"));
    assert_eq!(rows.len(), 51);
    for r in &rows {
        assert_eq!(&r[1..], &rows[0][1..]);
    }
}

#[test]
fn config_errors_exit_3() {
    let d = tempfile::tempdir().unwrap();
    let o = run_config(
        d.path(),
        r#"{"scenario":"su2_flow","params":{"dt":0.01},"output_dir":"x"}"#,
    );
    assert_eq!(o.status.code(), Some(3));
    let o = run_config(
        d.path(),
        r#"{"scenario":"verify_conformal","params":{"cases":3},"output_dir":"x"}"#,
    );
    assert_eq!(o.status.code(), Some(3));
    let o = run_config(d.path(), "not json");
    assert_eq!(o.status.code(), Some(3));
    let o = bin()
        .args(["run", "--config", "/nonexistent/cfg.json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = bin().args(["verify", "--suite", "nope"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn seeded_conformal_run() {
    let d = tempfile::tempdir().unwrap();
    let json = format!(
        r#"{{"scenario":"verify_conformal","params":{{"degree":3,"cases":6,"seed":7}},"output_dir":"{}"}}"#,
        d.path().display()
    );
    let o = run_config(d.path(), &json);
    assert_eq!(o.status.code(), Some(0));
    let rep = read_report(&d.path().join("verify_conformal.json"));
    assert_eq!((rep.cases, rep.passed, rep.seed), (6, 6, 7));
    assert_eq!(rep.worst_residual, 0.0);
}

fn verify(suite: &str, extra: &[&str], out: &Path) -> RunReport {
    let o = bin()
        .args(["verify", "--suite", suite])
        .args(extra)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap();
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let stdout: RunReport = serde_json::from_slice(&o.stdout).unwrap();
    let name = stdout.scenario.clone();
    let rep = read_report(&out.join(format!("{name}.json")));
    assert_eq!(rep, stdout);
    rep
}

#[test]
fn verify_suites() {
    let d = tempfile::tempdir().unwrap();
    let r = verify("commutations", &["--cases", "4", "--seed", "1"], d.path());
    assert_eq!((r.status.as_str(), r.worst_residual), ("pass", 0.0));
    let r = verify("bianchi", &["--cases", "4", "--degree", "2"], d.path());
    assert_eq!(r.passed, 4);
    let r = verify("dissipation", &[], d.path());
    assert!(r.worst_residual <= 1e-8, "{}", r.worst_residual);
    let r = verify("variations", &[], d.path());
    assert_eq!(r.passed, r.cases);
    assert!(r.cases >= 80);
}

#[test]
fn report_table() {
    let d = tempfile::tempdir().unwrap();
    let o = bin().arg("report").arg(d.path()).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 1);

    let pass = RunReport {
        scenario: "verify_commutations".into(),
        status: "pass".into(),
        cases: 3,
        passed: 3,
        worst_residual: 0.0,
        seed: 1,
        wall_ms: 0,
    };
    std::fs::write(d.path().join("a.json"), pass.to_json()).unwrap();
    let o = bin().arg("report").arg(d.path()).output().unwrap();
    let out = String::from_utf8_lossy(&o.stdout).into_owned();
    assert_eq!(out.lines().count(), 2);

    let fail = RunReport {
        scenario: "dissipation_check".into(),
        status: "fail".into(),
        passed: 1,
        worst_residual: 0.5,
        ..pass
    };
    std::fs::write(d.path().join("b.json"), fail.to_json()).unwrap();
    std::fs::write(d.path().join("junk.json"), "{}").unwrap();
    let o = bin().arg("report").arg(d.path()).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8_lossy(&o.stdout).into_owned();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("dissipation_check"));
}
