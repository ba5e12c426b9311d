//! Evolution of the pseudohermitian data under a general deformation
//! `∂J/∂u = 2E`, `∂θ/∂u = 2ηθ`, evaluated either on left-invariant structures
//! (constant `E`, `η`) or as exact jets on Heisenberg structures, plus the
//! finite-difference harness used to check the homogeneous case.

use crate::error::{Result, TorsionError};
use crate::exact::{Coeff, Q};
use crate::frame::{
    self, LeftInvariantStructure, LieAlgebra3, Mat2, Phase, PseudohermitianGeometry,
};
use crate::heisenberg::operators;
use crate::heisenberg::{Dir, HeisenbergStructure, WeightedJet};
use num_complex::Complex64;

/// Scalar calculus of an ambient pseudohermitian structure.
pub trait Ambient {
    type Scalar: Clone;

    fn zero(&self) -> Self::Scalar;
    fn add(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar;
    fn mul(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar;
    fn scale(&self, a: &Self::Scalar, k: i64) -> Self::Scalar;
    fn mul_i(&self, a: &Self::Scalar) -> Self::Scalar;
    fn conj(&self, a: &Self::Scalar) -> Self::Scalar;
    fn a11(&self) -> Self::Scalar;
    fn webster(&self) -> Self::Scalar;
    /// Covariant derivative of a component of the given charge.
    fn cov(&self, u: &Self::Scalar, charge: i32, dir: Dir) -> Self::Scalar;

    fn sub(&self, a: &Self::Scalar, b: &Self::Scalar) -> Self::Scalar {
        self.add(a, &self.scale(b, -1))
    }

    /// `2Re(a)`.
    fn two_re(&self, a: &Self::Scalar) -> Self::Scalar {
        self.add(a, &self.conj(a))
    }

    fn sublaplacian(&self, u: &Self::Scalar) -> Self::Scalar {
        let u1 = self.cov(u, 0, Dir::Z1);
        let u1b = self.cov(u, 0, Dir::Z1bar);
        self.add(&self.cov(&u1, 1, Dir::Z1bar), &self.cov(&u1b, -1, Dir::Z1))
    }
}

/// Left-invariant structure: every component is constant, so covariant
/// derivatives reduce to connection terms.
#[derive(Clone, Copy, Debug)]
pub struct Homogeneous {
    pub geometry: PseudohermitianGeometry,
}

impl Ambient for Homogeneous {
    type Scalar = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn scale(&self, a: &Complex64, k: i64) -> Complex64 {
        a * k as f64
    }
    fn mul_i(&self, a: &Complex64) -> Complex64 {
        a * Complex64::i()
    }
    fn conj(&self, a: &Complex64) -> Complex64 {
        a.conj()
    }
    fn a11(&self) -> Complex64 {
        self.geometry.a11
    }
    fn webster(&self) -> Complex64 {
        Complex64::new(self.geometry.w, 0.0)
    }
    fn cov(&self, u: &Complex64, charge: i32, dir: Dir) -> Complex64 {
        let (p, q, r) = self.geometry.omega;
        let w = match dir {
            Dir::Z1 => p,
            Dir::Z1bar => q,
            Dir::T => r,
        };
        -(charge as f64) * w * u
    }
}

impl Ambient for HeisenbergStructure {
    type Scalar = WeightedJet;

    fn zero(&self) -> WeightedJet {
        WeightedJet::zero(self.basis())
    }
    fn add(&self, a: &WeightedJet, b: &WeightedJet) -> WeightedJet {
        a + b
    }
    fn mul(&self, a: &WeightedJet, b: &WeightedJet) -> WeightedJet {
        a * b
    }
    fn scale(&self, a: &WeightedJet, k: i64) -> WeightedJet {
        a.scale_int(k)
    }
    fn mul_i(&self, a: &WeightedJet) -> WeightedJet {
        a.mul_i()
    }
    fn conj(&self, a: &WeightedJet) -> WeightedJet {
        a.conj()
    }
    fn a11(&self) -> WeightedJet {
        HeisenbergStructure::a11(self).clone()
    }
    fn webster(&self) -> WeightedJet {
        HeisenbergStructure::webster(self).clone()
    }
    fn cov(&self, u: &WeightedJet, charge: i32, dir: Dir) -> WeightedJet {
        HeisenbergStructure::cov(self, u, charge, dir)
    }
}

/// Deformation `E ⊕ ηθ` through its component `E₁₁ = E₁^1̄` (with
/// `h₁₁̄ = 1`) and the real rate `η`.
#[derive(Clone, Debug, PartialEq)]
pub struct Deformation<S> {
    pub e11: S,
    pub eta: S,
}

/// `θ̇¹` as coefficients of `(θ, θ¹, θ¹̄)`: `(2iη¹, η, −iE¹_1̄)`.
pub fn coframe_variation<A: Ambient>(amb: &A, d: &Deformation<A::Scalar>) -> [A::Scalar; 3] {
    let eta_up = amb.cov(&d.eta, 0, Dir::Z1bar);
    let e1b1b = amb.conj(&d.e11);
    [
        amb.scale(&amb.mul_i(&eta_up), 2),
        d.eta.clone(),
        amb.scale(&amb.mul_i(&e1b1b), -1),
    ]
}

/// `Ȧ₁̄₁̄ = −2(iη₁̄₁̄ + ηA₁̄₁̄) − iE₁̄₁̄,₀`.
pub fn torsion_variation<A: Ambient>(amb: &A, d: &Deformation<A::Scalar>) -> A::Scalar {
    let eta_b = amb.cov(&d.eta, 0, Dir::Z1bar);
    let eta_bb = amb.cov(&eta_b, -1, Dir::Z1bar);
    let a1b1b = amb.conj(&amb.a11());
    let e0 = amb.cov(&amb.conj(&d.e11), -2, Dir::T);
    let inner = amb.add(&amb.mul_i(&eta_bb), &amb.mul(&d.eta, &a1b1b));
    amb.sub(&amb.scale(&inner, -2), &amb.mul_i(&e0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionRicciVariation<S> {
    /// `ω̇₁¹` as coefficients of `(θ, θ¹, θ¹̄)`.
    pub omega: [S; 3],
    pub ricci: S,
}

/// `ω̇₁¹` and `Ṙ₁₁̄` at `n = 1`.
pub fn connection_ricci_variation<A: Ambient>(
    amb: &A,
    d: &Deformation<A::Scalar>,
) -> ConnectionRicciVariation<A::Scalar> {
    let e1b1b = amb.conj(&d.e11);
    let ae = amb.two_re(&amb.mul(&amb.a11(), &e1b1b));
    let lap = amb.sublaplacian(&d.eta);
    let eta1 = amb.cov(&d.eta, 0, Dir::Z1);
    let eta1b = amb.cov(&d.eta, 0, Dir::Z1bar);
    // E₁₁,₁̄ and E₁̄₁̄,₁
    let div = amb.cov(&d.e11, 2, Dir::Z1bar);
    let div_b = amb.cov(&e1b1b, -2, Dir::Z1);
    let c1 = amb.sub(&amb.scale(&eta1, 3), &amb.mul_i(&div));
    let c1b = amb.add(&amb.scale(&eta1b, 3), &amb.mul_i(&div_b));
    let omega = [
        amb.mul_i(&amb.add(&ae, &lap)),
        c1.clone(),
        amb.scale(&c1b, -1),
    ];
    let ricci_now = amb.webster();
    let mut ricci = amb.scale(&amb.add(&ae, &lap), -1);
    ricci = amb.sub(&ricci, &amb.scale(&amb.mul(&d.eta, &ricci_now), 2));
    ricci = amb.sub(&ricci, &amb.cov(&c1, 1, Dir::Z1bar));
    ricci = amb.sub(&ricci, &amb.cov(&c1b, -1, Dir::Z1));
    ConnectionRicciVariation { omega, ricci }
}

/// `Ẇ = 2Re(iE₁₁,₁̄₁̄ − A₁₁E₁̄₁̄) − (4Δ_bη + 2Wη)`.
pub fn webster_variation<A: Ambient>(amb: &A, d: &Deformation<A::Scalar>) -> A::Scalar {
    let div = amb.cov(&d.e11, 2, Dir::Z1bar);
    let div2 = amb.cov(&div, 1, Dir::Z1bar);
    let a_e = amb.mul(&amb.a11(), &amb.conj(&d.e11));
    let head = amb.two_re(&amb.sub(&amb.mul_i(&div2), &a_e));
    let tail = amb.add(
        &amb.scale(&amb.sublaplacian(&d.eta), 4),
        &amb.scale(&amb.mul(&amb.webster(), &d.eta), 2),
    );
    amb.sub(&head, &tail)
}

/// Gauge operator `H(E ⊕ hθ) = h₁ + iE₁₁,₁̄` on the flat Heisenberg group,
/// where the lower-order part vanishes.
pub fn gauge_operator_h(
    s: &HeisenbergStructure,
    g: &Deformation<WeightedJet>,
) -> Result<WeightedJet> {
    if !s.is_flat() {
        return Err(TorsionError::UnsupportedBackground(
            "gauge operator is only pinned down on the flat background".into(),
        ));
    }
    Ok(&s.deriv(&g.eta, Dir::Z1) + &s.cov(&g.e11, 2, Dir::Z1bar).mul_i())
}

/// `2(2n + 2 + 1/n)`, the weight of `Δ_b h` in the highest-weight operator.
pub fn linearization_scalar_coefficient(n: u32) -> Q {
    let n = Q::from_integer(n.into());
    (Q::from_integer(2.into()) * n.clone() + Q::from_integer(2.into()) + n.recip())
        * Q::from_integer(2.into())
}

/// Weight `4n` of the `E` block.
pub fn linearization_e_coefficient(n: u32) -> i64 {
    4 * n as i64
}

#[derive(Clone, Debug, PartialEq)]
pub struct Linearization {
    /// `L₀E₁₁` with `L₀ = Δ_b` at `n = 1`.
    pub l0_e11: WeightedJet,
    /// `4·L₀E₁₁`.
    pub e_part: WeightedJet,
    /// `10·Δ_b h`.
    pub scalar_part: WeightedJet,
}

/// Highest-weight operator of the linearized flow at `n = 1` on the flat
/// Heisenberg group.
pub fn linearization_l(
    s: &HeisenbergStructure,
    g: &Deformation<WeightedJet>,
) -> Result<Linearization> {
    if !s.is_flat() {
        return Err(TorsionError::UnsupportedBackground(
            "linearization is evaluated on the flat background".into(),
        ));
    }
    let l0_e11 = operators::folland_stein(s, &Q::from_integer(0.into()), &g.e11);
    let e_part = l0_e11.scale_int(linearization_e_coefficient(1));
    let scalar_part = operators::sublaplacian(s, &g.eta)
        .scale(&Coeff::from_q(linearization_scalar_coefficient(1)));
    Ok(Linearization {
        l0_e11,
        e_part,
        scalar_part,
    })
}

/// One-parameter family of left-invariant structures
/// `J(u) = chart(a₀ + u·da, c₀ + u·dc)`, `θ(u) = s₀e^{2ηu}σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartFamily {
    pub name: String,
    pub algebra: LieAlgebra3,
    /// Unscaled contact form `σ`.
    pub sigma: [f64; 3],
    pub a0: f64,
    pub c0: f64,
    pub da: f64,
    pub dc: f64,
    pub s0: f64,
    pub eta: f64,
}

impl ChartFamily {
    pub fn structure(&self, u: f64) -> LeftInvariantStructure {
        let s = self.s0 * (2.0 * self.eta * u).exp();
        let th = [s * self.sigma[0], s * self.sigma[1], s * self.sigma[2]];
        LeftInvariantStructure::new(
            self.algebra.clone(),
            th,
            frame::j_from_chart(self.a0 + u * self.da, self.c0 + u * self.dc),
        )
    }

    /// `dJ/du` of the chart `[[a, b], [c, −a]]`, `b = (−1 − a²)/c`.
    pub fn j_velocity(&self, u: f64) -> Mat2 {
        let (a, c) = (self.a0 + u * self.da, self.c0 + u * self.dc);
        let b = (-1.0 - a * a) / c;
        let db = (-2.0 * a * self.da - b * self.dc) / c;
        [[self.da, db], [self.dc, -self.da]]
    }

    /// The deformation `(E₁₁, η)` tangent to the family at `u`, in the
    /// standard frame there.
    pub fn deformation(&self, u: f64) -> Result<Deformation<Complex64>> {
        let st = self.structure(u);
        let cf = frame::adapted_coframe(&st)?;
        let dj = self.j_velocity(u);
        let e = [
            [0.5 * dj[0][0], 0.5 * dj[0][1]],
            [0.5 * dj[1][0], 0.5 * dj[1][1]],
        ];
        let basis = st.plane_basis();
        let coords = plane_coords(&basis, &cf.z1);
        let ez = [
            e[0][0] * coords[0] + e[0][1] * coords[1],
            e[1][0] * coords[0] + e[1][1] * coords[1],
        ];
        let mut v = [Complex64::new(0.0, 0.0); 3];
        for (k, u) in basis.iter().enumerate() {
            for i in 0..3 {
                v[i] += ez[k] * u[i];
            }
        }
        let e11: Complex64 = (0..3).map(|i| cf.theta1[i].conj() * v[i]).sum();
        Ok(Deformation {
            e11,
            eta: Complex64::new(self.eta, 0.0),
        })
    }
}

/// Coordinates of a contact vector in the plane basis, which has a unit
/// entry on a coordinate where the other basis vector vanishes.
fn plane_coords(basis: &[[f64; 3]; 2], v: &[Complex64; 3]) -> [Complex64; 2] {
    let pick = |n: usize| {
        (0..3)
            .find(|&i| basis[n][i] == 1.0 && basis[1 - n][i] == 0.0)
            .expect("plane basis has a pivot")
    };
    [v[pick(0)], v[pick(1)]]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Coframe,
    Torsion,
    ConnectionRicci,
    Webster,
}

impl Formula {
    pub const ALL: [Formula; 4] = [
        Formula::Coframe,
        Formula::Torsion,
        Formula::ConnectionRicci,
        Formula::Webster,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Formula::Coframe => "coframe",
            Formula::Torsion => "torsion",
            Formula::ConnectionRicci => "connection_ricci",
            Formula::Webster => "webster",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VariationReport {
    pub formula: Formula,
    pub analytic: Vec<Complex64>,
    pub finite_difference: Vec<Complex64>,
    pub abs_error: f64,
    /// Error ratio between steps `eps` and `eps/2`; `None` when both errors
    /// are at roundoff level and carry no order information.
    pub richardson_ratio: Option<f64>,
}

/// Errors below this are treated as roundoff in the Richardson ratio.
pub const ROUNDOFF_FLOOR: f64 = 1e-10;

/// Quantities tracked along a family, in the frame whose phase is tied to
/// the coframe at `u₀`: the coframe and connection forms are returned as
/// components on the Lie algebra basis.
struct Snapshot {
    theta1: [Complex64; 3],
    omega: [Complex64; 3],
    a1b1b: Complex64,
    w: f64,
    ricci: f64,
}

fn snapshot(family: &ChartFamily, u: f64, reference: &Phase) -> Result<Snapshot> {
    let st = family.structure(u);
    let cf = frame::adapted_coframe_with_phase(&st, reference)?;
    let g = frame::solve_structure_equations(&st, &cf)?;
    let mut omega = [Complex64::new(0.0, 0.0); 3];
    for (i, o) in omega.iter_mut().enumerate() {
        *o = g.omega_on(
            Complex64::new(st.theta[i], 0.0),
            cf.theta1[i],
            cf.theta1[i].conj(),
        );
    }
    Ok(Snapshot {
        theta1: cf.theta1,
        omega,
        a1b1b: g.a1b1b(),
        w: g.w,
        ricci: g.ricci,
    })
}

fn evaluate_forms(v: &[Complex64; 3], frame: &[[Complex64; 3]; 3]) -> [Complex64; 3] {
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (k, x) in frame.iter().enumerate() {
        out[k] = (0..3).map(|i| v[i] * x[i]).sum();
    }
    out
}

fn observed(formula: Formula, s: &Snapshot, frame: &[[Complex64; 3]; 3]) -> Vec<Complex64> {
    match formula {
        Formula::Coframe => evaluate_forms(&s.theta1, frame).to_vec(),
        Formula::Torsion => vec![s.a1b1b],
        Formula::ConnectionRicci => {
            let mut v = evaluate_forms(&s.omega, frame).to_vec();
            v.push(Complex64::new(s.ricci, 0.0));
            v
        }
        Formula::Webster => vec![Complex64::new(s.w, 0.0)],
    }
}

/// The analytic variation at `u₀`, in the shape returned by the harness.
pub fn analytic_variation(
    family: &ChartFamily,
    formula: Formula,
    u0: f64,
) -> Result<Vec<Complex64>> {
    let st = family.structure(u0);
    let amb = Homogeneous {
        geometry: frame::geometry(&st)?,
    };
    let d = family.deformation(u0)?;
    Ok(match formula {
        Formula::Coframe => coframe_variation(&amb, &d).to_vec(),
        Formula::Torsion => vec![torsion_variation(&amb, &d)],
        Formula::ConnectionRicci => {
            let r = connection_ricci_variation(&amb, &d);
            let mut v = r.omega.to_vec();
            v.push(r.ricci);
            v
        }
        Formula::Webster => vec![webster_variation(&amb, &d)],
    })
}

fn centered(family: &ChartFamily, formula: Formula, u0: f64, eps: f64) -> Result<Vec<Complex64>> {
    let st0 = family.structure(u0);
    let cf0 = frame::adapted_coframe(&st0)?;
    let reference = Phase::Reference(cf0.theta1);
    let t = cf0.t.map(|x| Complex64::new(x, 0.0));
    let zb = cf0.z1.map(|x| x.conj());
    let frame = [t, cf0.z1, zb];
    let eval = |u: f64| {
        snapshot(family, u, &reference)
            .map(|s| observed(formula, &s, &frame))
            .map_err(|e| TorsionError::FamilyEvaluationFailed {
                u,
                reason: e.to_string(),
            })
    };
    let plus = eval(u0 + eps)?;
    let minus = eval(u0 - eps)?;
    Ok(plus
        .iter()
        .zip(&minus)
        .map(|(p, m)| (p - m) / (2.0 * eps))
        .collect())
}

fn max_err(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Centered difference of the family's exact geometry against the analytic
/// variation, with a Richardson check at `eps/2`.
pub fn fd_verify(
    family: &ChartFamily,
    formula: Formula,
    u0: f64,
    eps: f64,
) -> Result<VariationReport> {
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(TorsionError::PreconditionViolated(format!(
            "eps {eps} outside (0, 0.1]"
        )));
    }
    let analytic = analytic_variation(family, formula, u0).map_err(|e| {
        TorsionError::FamilyEvaluationFailed {
            u: u0,
            reason: e.to_string(),
        }
    })?;
    let fd = centered(family, formula, u0, eps)?;
    let fd_half = centered(family, formula, u0, eps / 2.0)?;
    let abs_error = max_err(&analytic, &fd);
    let half_error = max_err(&analytic, &fd_half);
    let richardson_ratio = if abs_error < ROUNDOFF_FLOOR && half_error < ROUNDOFF_FLOOR {
        None
    } else {
        Some(abs_error / half_error)
    };
    Ok(VariationReport {
        formula,
        analytic,
        finite_difference: fd,
        abs_error,
        richardson_ratio,
    })
}

/// Battery of rescaling, chart and combined families on su(2), sl(2,ℝ) and
/// the Heisenberg algebra. Velocities are kept moderate so the centered
/// difference error at `eps = 1e−3` stays below `1e−6`.
pub fn standard_families() -> Vec<ChartFamily> {
    let mut out = Vec::new();
    let sl2 = LieAlgebra3::from_brackets([0.0, 0.0, 2.0], [-2.0, 0.0, 0.0], [0.0, -2.0, 0.0]);
    let algebras = [
        ("su2", LieAlgebra3::su2()),
        ("sl2", sl2),
        ("nil", LieAlgebra3::heisenberg()),
    ];
    let bases = [(0.0, -1.0), (0.2, -1.0), (-0.3, -0.8), (0.1, -1.3)];
    let motions = [
        ("rescale", 0.0, 0.0, 0.5, 1.0),
        ("chart_a", 1.0, 0.0, 0.0, 1.0),
        ("chart_c", 0.0, 0.5, 0.0, 1.5),
        ("combined", -0.4, 0.25, -0.3, 0.8),
    ];
    for (an, alg) in &algebras {
        for (bi, &(a0, c0)) in bases.iter().enumerate() {
            for &(mn, da, dc, eta, s0) in &motions {
                if bi > 1 && mn == "rescale" {
                    continue;
                }
                out.push(ChartFamily {
                    name: format!("{an}/{mn}/{bi}"),
                    algebra: alg.clone(),
                    sigma: [0.0, 0.0, 1.0],
                    a0,
                    c0,
                    da,
                    dc,
                    s0,
                    eta,
                });
            }
        }
    }
    out
}
