//! Scenario and suite execution. Randomized suites draw case `i` from its
//! own seeded stream and run cases in parallel; results are collected in
//! case order so reports do not depend on scheduling.

use crate::config::{FlowParams, SuiteParams};
use rand::Rng;
use rayon::prelude::*;
use torsionflow::conformal::{
    identity_residual, max_abs_at_samples, pluriharmonic_generator, ConformalChange, HoloPoly,
    IdentityId,
};
use torsionflow::exact::Coeff;
use torsionflow::flow::{self, FlowConfig, FlowState, Trajectory};
use torsionflow::frame;
use torsionflow::heisenberg::operators::{bianchi_w0_residual, commutation_residuals};
use torsionflow::heisenberg::{Basis, HeisenbergStructure, WeightedJet};
use torsionflow::random;
use torsionflow::variation::{self, Formula, ROUNDOFF_FLOOR};
use torsionflow::TorsionError;

/// Identities checked by the conformal suite.
pub const CONFORMAL_IDENTITIES: [IdentityId; 4] = [
    IdentityId::LeeVector,
    IdentityId::LeeDivergence,
    IdentityId::PaneitzP1Cov,
    IdentityId::PaneitzP0Cov,
];

pub const VARIATION_TOLERANCE: f64 = 1e-6;
pub const RICHARDSON_RANGE: (f64, f64) = (3.2, 4.8);
pub const DISSIPATION_TOLERANCE: f64 = 1e-4;
pub const RETRACTION_TOLERANCE: f64 = 1e-10;
pub const ENERGY_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub scenario: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub worst_residual: f64,
    pub seed: u64,
    pub halt: Option<TorsionError>,
    pub trajectory: Option<Trajectory>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Case {
    ok: bool,
    residual: f64,
}

fn tally(scenario: &'static str, seed: u64, cases: &[Case]) -> Outcome {
    Outcome {
        scenario,
        cases: cases.len(),
        passed: cases.iter().filter(|c| c.ok).count(),
        worst_residual: cases
            .iter()
            .map(|c| c.residual)
            .filter(|r| r.is_finite())
            .fold(0.0, f64::max),
        seed,
        halt: None,
        trajectory: None,
    }
}

/// Independent stream for case `case` of a suite seeded with `seed`.
pub fn case_rng(seed: u64, case: usize) -> impl Rng {
    random::rng(seed.wrapping_mul(1_000_003).wrapping_add(case as u64))
}

fn identity_case(change: &ConformalChange, ids: &[IdentityId]) -> Case {
    let mut case = Case {
        ok: true,
        residual: 0.0,
    };
    for &id in ids {
        match identity_residual(id, change) {
            Ok(r) => {
                case.ok &= r.is_zero;
                case.residual = case.residual.max(r.max_abs_at_samples);
            }
            Err(_) => case.ok = false,
        }
    }
    case
}

/// Conformal transformation identities on random real exponents.
pub fn conformal(p: SuiteParams) -> Outcome {
    let cases: Vec<Case> = (0..p.cases)
        .into_par_iter()
        .map(|i| {
            let f = random::real_poly(&mut case_rng(p.seed, i), p.degree, 0.5);
            match ConformalChange::new(f) {
                Ok(c) => identity_case(&c, &CONFORMAL_IDENTITIES),
                Err(_) => Case {
                    ok: false,
                    residual: 0.0,
                },
            }
        })
        .collect();
    tally("verify_conformal", p.seed, &cases)
}

/// Random `Σ c_{jk} z^j w^k` with `j + k ≤ degree`, always carrying a top
/// degree term.
pub fn random_holomorphic<R: Rng>(r: &mut R, degree: u16) -> HoloPoly {
    let mut h = HoloPoly::new();
    let coeff = |r: &mut R| Coeff::complex(random::rational(r), random::rational(r));
    for j in 0..=degree {
        for k in 0..=(degree - j) {
            if r.gen_bool(0.5) {
                h = h.with(j, k, coeff(r));
            }
        }
    }
    if h.degree() < degree {
        let j = r.gen_range(0..=degree);
        h = h.with(j, degree - j, coeff(r));
    }
    h
}

/// Gauge identity for the flow's own right side on pluriharmonic exponents.
pub fn bianchi(p: SuiteParams) -> Outcome {
    let cases: Vec<Case> = (0..p.cases)
        .into_par_iter()
        .map(|i| {
            let h = random_holomorphic(&mut case_rng(p.seed, i), p.degree);
            match ConformalChange::new(pluriharmonic_generator(&h)) {
                Ok(c) => identity_case(&c, &[IdentityId::GaugeBianchi]),
                Err(_) => Case {
                    ok: false,
                    residual: 0.0,
                },
            }
        })
        .collect();
    tally("verify_bianchi", p.seed, &cases)
}

/// Commutation relations and `W,₀ = A₁₁,₁̄₁̄ + A₁̄₁̄,₁₁` on the flat and a
/// random rescaled structure.
pub fn commutations(p: SuiteParams) -> Outcome {
    let cases: Vec<Case> = (0..p.cases)
        .into_par_iter()
        .map(|i| {
            let mut r = case_rng(p.seed, i);
            let f = random::real_poly(&mut r, p.degree, 0.5);
            let phi = random::complex_poly(&mut r, p.degree.max(1), 0.5);
            let b = Basis::new(vec![f]);
            let flat = HeisenbergStructure::flat(&b);
            let hatted = flat.hat(&[1]);
            let phi = WeightedJet::from_poly(&b, phi);
            let mut case = Case {
                ok: true,
                residual: 0.0,
            };
            for s in [&flat, &hatted] {
                let mut all = commutation_residuals(s, &phi).to_vec();
                all.push(bianchi_w0_residual(s));
                for res in &all {
                    case.ok &= res.is_zero();
                    case.residual = case.residual.max(max_abs_at_samples(res));
                }
            }
            case
        })
        .collect();
    tally("verify_commutations", p.seed, &cases)
}

/// Variation formulas against centered differences over the standard
/// family battery.
pub fn variations(eps: f64) -> Outcome {
    let families = variation::standard_families();
    let jobs: Vec<_> = families
        .iter()
        .flat_map(|f| Formula::ALL.into_iter().map(move |m| (f, m)))
        .collect();
    let cases: Vec<Case> = jobs
        .par_iter()
        .map(
            |(fam, formula)| match variation::fd_verify(fam, *formula, 0.0, eps) {
                Ok(r) => {
                    let ratio_ok = match r.richardson_ratio {
                        Some(q) => (RICHARDSON_RANGE.0..=RICHARDSON_RANGE.1).contains(&q),
                        None => r.abs_error < ROUNDOFF_FLOOR,
                    };
                    Case {
                        ok: r.abs_error <= VARIATION_TOLERANCE && ratio_ok,
                        residual: r.abs_error,
                    }
                }
                Err(_) => Case {
                    ok: false,
                    residual: f64::NAN,
                },
            },
        )
        .collect();
    tally("verify_variations", 0, &cases)
}

fn flow_config(fp: &FlowParams, normalized: bool) -> FlowConfig {
    FlowConfig {
        normalized,
        dt: fp.dt,
        t_end: fp.t_end,
        retraction_tolerance: RETRACTION_TOLERANCE,
        ..FlowConfig::default()
    }
}

fn initial(fp: &FlowParams) -> FlowState {
    FlowState {
        j: fp.j,
        s: fp.s0,
        time: 0.0,
    }
}

/// Integrates the flow and checks, per sample, `J² = −1`, positivity of
/// `s`, and (unnormalized) that the energy does not increase.
pub fn flow_run(fp: &FlowParams, normalized: bool) -> Outcome {
    let scenario = if normalized {
        "su2_normalized_flow"
    } else {
        "su2_flow"
    };
    let traj = match flow::integrate(&initial(fp), &flow_config(fp, normalized)) {
        Ok(t) => t,
        Err(e) => {
            let mut o = tally(
                scenario,
                0,
                &[Case {
                    ok: false,
                    residual: f64::NAN,
                }],
            );
            o.halt = Some(e);
            return o;
        }
    };
    let mut cases = Vec::with_capacity(traj.samples.len());
    for (k, smp) in traj.samples.iter().enumerate() {
        let jres = frame::j_squared_residual(&smp.state.j);
        let rise = match k {
            0 => 0.0,
            _ if normalized => 0.0,
            _ => (smp.energy - traj.samples[k - 1].energy).max(0.0),
        };
        cases.push(Case {
            ok: jres <= RETRACTION_TOLERANCE && smp.state.s > 0.0 && rise <= ENERGY_SLACK,
            residual: jres.max(rise),
        });
    }
    let mut o = tally(scenario, 0, &cases);
    o.halt = traj.halt.clone();
    o.trajectory = Some(traj);
    o
}

/// Dissipation law along an unnormalized trajectory.
pub fn dissipation(fp: &FlowParams) -> Outcome {
    let scenario = "dissipation_check";
    let fail = |e: TorsionError| {
        let mut o = tally(
            scenario,
            0,
            &[Case {
                ok: false,
                residual: f64::NAN,
            }],
        );
        o.halt = Some(e);
        o
    };
    let traj = match flow::integrate(&initial(fp), &flow_config(fp, false)) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let res = match flow::dissipation_residual(&traj) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let cases: Vec<Case> = res
        .iter()
        .map(|r| Case {
            ok: r.abs() <= DISSIPATION_TOLERANCE,
            residual: r.abs(),
        })
        .collect();
    let mut o = tally(scenario, 0, &cases);
    o.halt = traj.halt.clone();
    o.trajectory = Some(traj);
    o
}
