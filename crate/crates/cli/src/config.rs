use serde::Deserialize;
use std::path::{Path, PathBuf};
use torsionflow::frame::j_from_chart;
use torsionflow::frame::Mat2;

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Su2Flow,
    Su2NormalizedFlow,
    VerifyConformal,
    VerifyVariations,
    VerifyCommutations,
    DissipationCheck,
}

impl Scenario {
    pub fn id(self) -> &'static str {
        match self {
            Scenario::Su2Flow => "su2_flow",
            Scenario::Su2NormalizedFlow => "su2_normalized_flow",
            Scenario::VerifyConformal => "verify_conformal",
            Scenario::VerifyVariations => "verify_variations",
            Scenario::VerifyCommutations => "verify_commutations",
            Scenario::DissipationCheck => "dissipation_check",
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub s0: Option<f64>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub degree: Option<u16>,
    pub cases: Option<usize>,
    pub seed: Option<u64>,
    pub eps: Option<f64>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    #[serde(default)]
    pub params: Params,
    pub output_dir: PathBuf,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid config: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Largest polynomial degree accepted by the randomized suites.
pub const MAX_DEGREE: u16 = 4;

/// Initial data for the flow scenarios.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowParams {
    pub j: Mat2,
    pub s0: f64,
    pub dt: f64,
    pub t_end: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteParams {
    pub cases: usize,
    pub degree: u16,
    pub seed: u64,
}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

impl Params {
    /// Chart `[[a, b], [c, −a]]` on the positive branch `c < 0`; `b` is
    /// derived from `a² + bc = −1` and, if given, checked against it.
    pub fn flow(&self) -> Result<FlowParams, ConfigError> {
        let a = self.a.unwrap_or(0.0);
        let c = self.c.unwrap_or(-1.0);
        if c.is_nan() || c >= 0.0 || !a.is_finite() {
            return err("chart needs finite a and c < 0");
        }
        let j = j_from_chart(a, c);
        if let Some(b) = self.b {
            if (b - j[0][1]).abs() > 1e-9 * (1.0 + b.abs()) {
                return err(format!(
                    "b = {b} violates a² + bc = −1 (expected {})",
                    j[0][1]
                ));
            }
        }
        let s0 = self.s0.unwrap_or(1.0);
        if !(s0 > 0.0 && s0.is_finite()) {
            return err("s0 must be positive");
        }
        let dt = self
            .dt
            .ok_or_else(|| ConfigError("missing param dt".into()))?;
        let t_end = self
            .t_end
            .ok_or_else(|| ConfigError("missing param t_end".into()))?;
        if !(dt > 0.0 && dt.is_finite()) {
            return err("dt must be positive");
        }
        if !(t_end >= 0.0 && t_end.is_finite()) {
            return err("t_end must be non-negative");
        }
        Ok(FlowParams { j, s0, dt, t_end })
    }

    pub fn suite(&self, default_cases: usize) -> Result<SuiteParams, ConfigError> {
        let seed = self
            .seed
            .ok_or_else(|| ConfigError("randomized suites need a seed".into()))?;
        let degree = self.degree.unwrap_or(3);
        if degree > MAX_DEGREE {
            return err(format!("degree {degree} above cap {MAX_DEGREE}"));
        }
        let cases = self.cases.unwrap_or(default_cases);
        if cases == 0 {
            return err("cases must be positive");
        }
        Ok(SuiteParams {
            cases,
            degree,
            seed,
        })
    }

    pub fn eps(&self) -> Result<f64, ConfigError> {
        let eps = self.eps.unwrap_or(1e-3);
        if !(eps > 0.0 && eps <= 0.1) {
            return err("eps must lie in (0, 0.1]");
        }
        Ok(eps)
    }
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| ConfigError(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        match self.scenario {
            Scenario::Su2Flow | Scenario::Su2NormalizedFlow | Scenario::DissipationCheck => {
                self.params.flow().map(|_| ())
            }
            Scenario::VerifyConformal | Scenario::VerifyCommutations => {
                self.params.suite(1).map(|_| ())
            }
            Scenario::VerifyVariations => self.params.eps().map(|_| ()),
        }
    }
}
