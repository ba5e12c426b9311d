use crate::suites::Outcome;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use torsionflow::flow::Trajectory;
use torsionflow::TorsionError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub scenario: String,
    pub status: String,
    pub cases: usize,
    pub passed: usize,
    pub worst_residual: f64,
    pub seed: u64,
    pub wall_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Integration stopped early without any failed assertion.
    Halted,
}

pub fn status_of(o: &Outcome) -> (Status, String) {
    if o.passed < o.cases {
        return (Status::Fail, "fail".into());
    }
    match &o.halt {
        None => (Status::Pass, "pass".into()),
        Some(TorsionError::ExtinctionReached { time }) => {
            (Status::Halted, format!("halted(extinction at t={time})"))
        }
        Some(TorsionError::StepUnstable { time }) => {
            (Status::Fail, format!("halted(unstable at t={time})"))
        }
        Some(e) => (Status::Fail, format!("halted({e})")),
    }
}

impl RunReport {
    pub fn from_outcome(o: &Outcome, wall_ms: u64) -> Self {
        Self {
            scenario: o.scenario.to_string(),
            status: status_of(o).1,
            cases: o.cases,
            passed: o.passed,
            worst_residual: o.worst_residual,
            seed: o.seed,
            wall_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn is_fail(&self) -> bool {
        self.status == "fail"
            || self.status.starts_with("halted(unstable")
            || self.passed < self.cases
    }
}

pub const CSV_HEADER: &str = "t,s,W,A_abs,J_a,J_b,J_c,energy,volume,dist_can";

/// One row per sample, 17 significant digits.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in &traj.samples {
        let j = s.state.j;
        let row = [
            s.time, s.state.s, s.w, s.a_abs, j[0][0], j[0][1], j[1][0], s.energy, s.volume,
            s.dist_can,
        ];
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Reports found in `dir`, sorted by file name. Files that are not
/// reports are skipped with a warning on stderr.
pub fn load_reports(dir: &Path) -> std::io::Result<Vec<(String, RunReport)>> {
    let mut out = Vec::new();
    let mut entries: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    entries.sort();
    for p in entries {
        let name = p
            .file_name()
            .unwrap_or_default()
            .to_string_lossy()
            .into_owned();
        match std::fs::read_to_string(&p)
            .ok()
            .and_then(|t| serde_json::from_str(&t).ok())
        {
            Some(r) => out.push((name, r)),
            None => eprintln!("warning: skipping {name}: not a run report"),
        }
    }
    Ok(out)
}

/// Plain-text table with failing rows first.
pub fn render_table(reports: &[(String, RunReport)]) -> String {
    let mut rows: Vec<&RunReport> = reports.iter().map(|(_, r)| r).collect();
    rows.sort_by_key(|r| !r.is_fail());
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<22} {:<34} {:>13} {:>14}",
        "scenario", "status", "passed/cases", "worst_residual"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<22} {:<34} {:>13} {:>14.3e}",
            r.scenario,
            r.status,
            format!("{}/{}", r.passed, r.cases),
            r.worst_residual
        );
    }
    out
}
