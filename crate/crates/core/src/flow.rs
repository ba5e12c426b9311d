//! Torsion flow `∂J/∂t = 2A_{J,θ}`, `∂θ/∂t = −2Wθ` for left-invariant
//! structures `(J, θ = s·σ³)` on SU(2), where it is an ODE in `(J, s)`.

use crate::error::{Result, TorsionError};
use crate::frame::{self, LeftInvariantStructure, Mat2, PseudohermitianGeometry, J_CAN};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowState {
    pub j: Mat2,
    pub s: f64,
    pub time: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowConfig {
    pub normalized: bool,
    pub dt: f64,
    pub t_end: f64,
    pub retraction_tolerance: f64,
    pub extinction_guard: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            normalized: false,
            dt: 1e-3,
            t_end: 1.0,
            retraction_tolerance: 1e-10,
            extinction_guard: 1e-6,
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.dt > 0.0
            && self.dt.is_finite()
            && self.extinction_guard > 0.0
            && self.t_end.is_finite()
            && self.retraction_tolerance > 0.0;
        if ok {
            Ok(())
        } else {
            Err(TorsionError::PreconditionViolated(format!(
                "invalid flow config {self:?}"
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub time: f64,
    pub state: FlowState,
    pub w: f64,
    pub a_abs: f64,
    pub energy: f64,
    pub volume: f64,
    pub dist_can: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub normalized: bool,
    pub samples: Vec<Sample>,
    /// Why integration stopped before `t_end`, if it did.
    pub halt: Option<TorsionError>,
}

/// `(J_can, s = 1)` at time zero.
pub fn canonical_structure() -> FlowState {
    FlowState {
        j: J_CAN,
        s: 1.0,
        time: 0.0,
    }
}

pub fn structure(state: &FlowState) -> LeftInvariantStructure {
    LeftInvariantStructure::su2(state.s, state.j)
}

pub fn geometry(state: &FlowState) -> Result<PseudohermitianGeometry> {
    frame::geometry(&structure(state))
}

pub fn distance_to_canonical(j: &Mat2) -> f64 {
    let mut acc = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            acc += (j[r][c] - J_CAN[r][c]).powi(2);
        }
    }
    acc.sqrt()
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

fn frob(a: &Mat2) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

/// `J ↦ J·(−J²)^{−1/2}`, the nearest point with `J² = −1` along the same
/// eigenspaces. Uses the 2×2 closed form
/// `√M = (M + √det M·I)/√(tr M + 2√det M)`.
pub fn retract(j: &Mat2) -> Mat2 {
    let j2 = mat_mul(j, j);
    let m = [[-j2[0][0], -j2[0][1]], [-j2[1][0], -j2[1][1]]];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let d = det.max(0.0).sqrt();
    let n = (m[0][0] + m[1][1] + 2.0 * d).sqrt();
    let r = [
        [(m[0][0] + d) / n, m[0][1] / n],
        [m[1][0] / n, (m[1][1] + d) / n],
    ];
    let rd = r[0][0] * r[1][1] - r[0][1] * r[1][0];
    let rinv = [[r[1][1] / rd, -r[0][1] / rd], [-r[1][0] / rd, r[0][0] / rd]];
    mat_mul(j, &rinv)
}

/// Torsion endomorphism `A(X) = 2Re(A₁₁θ¹(X)Z₁̄)` at scale one, as a
/// matrix on `(e₁, e₂)`.
fn torsion_endomorphism(j: &Mat2) -> Result<(Mat2, PseudohermitianGeometry)> {
    let st = LeftInvariantStructure::su2(1.0, *j);
    let cf = frame::adapted_coframe(&st)?;
    let g = frame::solve_structure_equations(&st, &cf)?;
    let zb = [cf.z1[0].conj(), cf.z1[1].conj(), cf.z1[2].conj()];
    let mut out = [[0.0; 2]; 2];
    for col in 0..2 {
        let th1: Complex64 = cf.theta1[col];
        let coeff = g.a11 * th1;
        for row in 0..2 {
            out[row][col] = 2.0 * (coeff * zb[row]).re;
        }
    }
    Ok((out, g))
}

/// `(dJ/dt, ds/dt)`. The right side is evaluated on the retracted `J`;
/// geometry is computed at scale one and rescaled (`W ∝ 1/s`, `A ∝ 1/s`),
/// which keeps it finite as `s → 0`. The normalized flow freezes `s`.
pub fn flow_rhs(state: &FlowState, normalized: bool) -> Result<(Mat2, f64)> {
    if state.s.is_nan() || state.s <= 0.0 {
        return Err(TorsionError::PreconditionViolated(
            "scale must be positive".into(),
        ));
    }
    let j = retract(&state.j);
    let (a, g1) = torsion_endomorphism(&j)?;
    let mut dj = [[0.0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            dj[r][c] = 2.0 * a[r][c] / state.s;
        }
    }
    let ds = if normalized { 0.0 } else { -2.0 * g1.w };
    Ok((dj, ds))
}

/// `(W·Vol, Vol)` with `Vol = 2s²`.
pub fn einstein_hilbert(state: &FlowState) -> Result<(f64, f64)> {
    let g = geometry(state)?;
    let vol = structure(state).volume();
    Ok((g.w * vol, vol))
}

pub fn sample(state: &FlowState) -> Result<Sample> {
    let g = geometry(state)?;
    let volume = structure(state).volume();
    Ok(Sample {
        time: state.time,
        state: *state,
        w: g.w,
        a_abs: g.a11.norm(),
        energy: g.w * volume,
        volume,
        dist_can: distance_to_canonical(&state.j),
    })
}

fn axpy(j: &Mat2, s: f64, k: &(Mat2, f64), h: f64) -> (Mat2, f64) {
    let mut out = *j;
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] += h * k.0[r][c];
        }
    }
    (out, s + h * k.1)
}

/// One classical RK4 step followed by retraction.
pub fn rk4_step(state: &FlowState, dt: f64, normalized: bool) -> Result<FlowState> {
    let f = |j: Mat2, s: f64| {
        flow_rhs(
            &FlowState {
                j,
                s,
                time: state.time,
            },
            normalized,
        )
    };
    let k1 = f(state.j, state.s)?;
    let (j2, s2) = axpy(&state.j, state.s, &k1, dt / 2.0);
    let k2 = f(j2, s2)?;
    let (j3, s3) = axpy(&state.j, state.s, &k2, dt / 2.0);
    let k3 = f(j3, s3)?;
    let (j4, s4) = axpy(&state.j, state.s, &k3, dt);
    let k4 = f(j4, s4)?;
    let mut j = state.j;
    for r in 0..2 {
        for c in 0..2 {
            j[r][c] += dt / 6.0 * (k1.0[r][c] + 2.0 * k2.0[r][c] + 2.0 * k3.0[r][c] + k4.0[r][c]);
        }
    }
    let s = state.s + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
    Ok(FlowState {
        j: retract(&j),
        s,
        time: state.time + dt,
    })
}

/// Fixed-step RK4 from `state` to `config.t_end`. Halts early, recording the
/// reason, when `s` drops below the extinction guard or `J` blows up.
pub fn integrate(state: &FlowState, config: &FlowConfig) -> Result<Trajectory> {
    config.validate()?;
    let mut samples = vec![sample(state)?];
    let mut cur = *state;
    let t0 = state.time;
    let n = ((config.t_end - t0) / config.dt - 1e-9).ceil().max(0.0) as usize;
    let mut halt = None;
    for k in 1..=n {
        let mut next = match rk4_step(&cur, config.dt, config.normalized) {
            Ok(v) => v,
            // A stage crossed s = 0, so extinction falls inside this step.
            Err(TorsionError::PreconditionViolated(_)) => {
                halt = Some(TorsionError::ExtinctionReached {
                    time: t0 + k as f64 * config.dt,
                });
                break;
            }
            Err(e) => {
                halt = Some(e);
                break;
            }
        };
        next.time = t0 + k as f64 * config.dt;
        if !next.j.iter().flatten().all(|x| x.is_finite()) || frob(&next.j) > 1e6 {
            halt = Some(TorsionError::StepUnstable { time: next.time });
            break;
        }
        if next.s < config.extinction_guard {
            halt = Some(TorsionError::ExtinctionReached { time: next.time });
            break;
        }
        if frame::j_squared_residual(&next.j) > config.retraction_tolerance {
            halt = Some(TorsionError::StepUnstable { time: next.time });
            break;
        }
        samples.push(sample(&next)?);
        cur = next;
    }
    Ok(Trajectory {
        normalized: config.normalized,
        samples,
        halt,
    })
}

/// Right side of the dissipation law, `−2(‖A‖² + W²)·Vol` with
/// `‖A‖² = |A₁₁|²`.
pub fn dissipation_rate(s: &Sample) -> f64 {
    -2.0 * (s.a_abs * s.a_abs + s.w * s.w) * s.volume
}

/// Centered difference of the energy minus the dissipation law, at each
/// interior sample of an unnormalized trajectory.
pub fn dissipation_residual(traj: &Trajectory) -> Result<Vec<f64>> {
    if traj.normalized {
        return Err(TorsionError::PreconditionViolated(
            "dissipation applies to the unnormalized flow".into(),
        ));
    }
    let n = traj.samples.len();
    if n < 3 {
        return Err(TorsionError::InsufficientSamples { needed: 3, got: n });
    }
    Ok((1..n - 1)
        .map(|i| {
            let (a, b) = (&traj.samples[i - 1], &traj.samples[i + 1]);
            let fd = if b.time == a.time {
                0.0
            } else {
                (b.energy - a.energy) / (b.time - a.time)
            };
            fd - dissipation_rate(&traj.samples[i])
        })
        .collect())
}

/// Trace of `dJ·J + J·dJ`, which vanishes when `dJ` is tangent to `J² = −1`.
pub fn anticommutator_trace(j: &Mat2, dj: &Mat2) -> f64 {
    let a = mat_mul(dj, j);
    let b = mat_mul(j, dj);
    a[0][0] + a[1][1] + b[0][0] + b[1][1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn canonical_is_torsion_free_and_shrinks() {
        let st = canonical_structure();
        let g = geometry(&st).unwrap();
        assert!(g.a11.norm() < 1e-14);
        assert_abs_diff_eq!(g.w, 2.0, epsilon = 1e-14);
        let (dj, ds) = flow_rhs(&st, false).unwrap();
        assert!(frob(&dj) < 1e-14);
        assert_abs_diff_eq!(ds, -4.0, epsilon = 1e-14);
        let (dj, ds) = flow_rhs(&FlowState { s: 3.0, ..st }, true).unwrap();
        assert!(frob(&dj) < 1e-14 && ds == 0.0);
    }

    #[test]
    fn retraction_lands_on_complex_structures() {
        let j = [[0.3, 1.2], [-0.9, -0.25]];
        let r = retract(&j);
        assert!(frame::j_squared_residual(&r) < 1e-14);
        assert!(frame::j_squared_residual(&retract(&J_CAN)) == 0.0);
    }

    #[test]
    fn distances() {
        assert_eq!(distance_to_canonical(&J_CAN), 0.0);
        let neg = [[0.0, -1.0], [1.0, 0.0]];
        assert_abs_diff_eq!(
            distance_to_canonical(&neg),
            2.0 * 2f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn lambda_family_ode() {
        // J = [[0, 1/λ], [−λ, 0]] flows by dλ/dt = −2(λ² − 1) at s = 1.
        for l in [0.7, 1.4] {
            let st = FlowState {
                j: [[0.0, 1.0 / l], [-l, 0.0]],
                s: 1.0,
                time: 0.0,
            };
            let (dj, _) = flow_rhs(&st, true).unwrap();
            assert_abs_diff_eq!(dj[1][0], 2.0 * (l * l - 1.0), epsilon = 1e-12);
            assert_abs_diff_eq!(dj[0][0], 0.0, epsilon = 1e-12);
        }
    }
}
