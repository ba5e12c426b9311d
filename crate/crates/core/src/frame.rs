//! Left-invariant pseudohermitian structures on three-dimensional Lie
//! algebras.
//!
//! A left-invariant form `α` satisfies `dα(X, Y) = −α([X, Y])`, so the
//! structure equations reduce to linear algebra on the structure constants.

use crate::error::{Result, TorsionError};
use num_complex::Complex64;

pub type Vec3 = [f64; 3];
pub type CVec3 = [Complex64; 3];
pub type Mat2 = [[f64; 2]; 2];

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra3 {
    /// `c[i][j][k] = c^k_ij`, with `[e_i, e_j] = Σ_k c^k_ij e_k`.
    c: [[[f64; 3]; 3]; 3],
}

impl LieAlgebra3 {
    /// Panics unless the constants are antisymmetric in `i, j`.
    pub fn new(c: [[[f64; 3]; 3]; 3]) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(
                        c[i][j][k], -c[j][i][k],
                        "structure constants must be antisymmetric"
                    );
                }
            }
        }
        Self { c }
    }

    /// Build from the three brackets `[e₁,e₂]`, `[e₂,e₃]`, `[e₃,e₁]`.
    pub fn from_brackets(e12: Vec3, e23: Vec3, e31: Vec3) -> Self {
        let mut c = [[[0.0; 3]; 3]; 3];
        for k in 0..3 {
            c[0][1][k] = e12[k];
            c[1][0][k] = -e12[k];
            c[1][2][k] = e23[k];
            c[2][1][k] = -e23[k];
            c[2][0][k] = e31[k];
            c[0][2][k] = -e31[k];
        }
        Self { c }
    }

    /// `[e₁,e₂] = 2e₃`, `[e₂,e₃] = 2e₁`, `[e₃,e₁] = 2e₂`.
    pub fn su2() -> Self {
        Self::from_brackets([0.0, 0.0, 2.0], [2.0, 0.0, 0.0], [0.0, 2.0, 0.0])
    }

    /// `[e₁,e₂] = e₃`, other brackets zero.
    pub fn heisenberg() -> Self {
        Self::from_brackets([0.0, 0.0, 1.0], [0.0; 3], [0.0; 3])
    }

    pub fn constants(&self) -> &[[[f64; 3]; 3]; 3] {
        &self.c
    }

    pub fn bracket(&self, u: &Vec3, v: &Vec3) -> Vec3 {
        let mut out = [0.0; 3];
        for i in 0..3 {
            for j in 0..3 {
                let uv = u[i] * v[j];
                if uv != 0.0 {
                    for k in 0..3 {
                        out[k] += uv * self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn bracket_c(&self, u: &CVec3, v: &CVec3) -> CVec3 {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out[k] += u[i] * v[j] * self.c[i][j][k];
                }
            }
        }
        out
    }

    /// Largest Jacobi residual over basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let e = |i: usize| {
            let mut v = [0.0; 3];
            v[i] = 1.0;
            v
        };
        let mut worst = 0.0f64;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let (x, y, z) = (e(a), e(b), e(c));
                    let t1 = self.bracket(&x, &self.bracket(&y, &z));
                    let t2 = self.bracket(&y, &self.bracket(&z, &x));
                    let t3 = self.bracket(&z, &self.bracket(&x, &y));
                    for k in 0..3 {
                        worst = worst.max((t1[k] + t2[k] + t3[k]).abs());
                    }
                }
            }
        }
        worst
    }
}

/// True iff every Jacobi residual vanishes exactly.
pub fn jacobi_check(algebra: &LieAlgebra3) -> bool {
    algebra.jacobi_residual() == 0.0
}

/// Phase convention for the (1,0) frame field.
#[derive(Clone, Debug, PartialEq)]
pub enum Phase {
    /// `θ¹(u₁)` real and positive, `u₁` the first contact-plane basis vector.
    Standard,
    /// `ref_θ¹(Z₁)` real and positive for a given reference (1,0)-form.
    Reference(CVec3),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeftInvariantStructure {
    pub algebra: LieAlgebra3,
    pub theta: Vec3,
    /// `J` in the contact-plane basis `(u₁, u₂)`, acting on columns:
    /// `J u₁ = J[0][0] u₁ + J[1][0] u₂`.
    pub j: Mat2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedCoframe {
    pub t: Vec3,
    pub z1: CVec3,
    pub theta1: CVec3,
}

/// `ω₁¹ = p θ¹ + q θ¹̄ + r θ`, torsion `A₁₁`, Webster curvature `W`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PseudohermitianGeometry {
    pub omega: (Complex64, Complex64, Complex64),
    pub a11: Complex64,
    pub w: f64,
    pub ricci: f64,
}

impl PseudohermitianGeometry {
    pub fn a1b1b(&self) -> Complex64 {
        self.a11.conj()
    }

    /// `ω₁¹(V)` for a vector given by its coframe values `(θ, θ¹, θ¹̄)`.
    pub fn omega_on(&self, th: Complex64, th1: Complex64, th1b: Complex64) -> Complex64 {
        self.omega.0 * th1 + self.omega.1 * th1b + self.omega.2 * th
    }
}

fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn dot_c(a: &CVec3, b: &CVec3) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn to_c(v: &Vec3) -> CVec3 {
    [v[0].into(), v[1].into(), v[2].into()]
}

fn conj3(v: &CVec3) -> CVec3 {
    [v[0].conj(), v[1].conj(), v[2].conj()]
}

fn inverse3(m: &[[Complex64; 3]; 3]) -> Option<[[Complex64; 3]; 3]> {
    let cof =
        |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    let adj = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    let det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if det.norm() <= 1e-14 * scale.powi(3).max(f64::MIN_POSITIVE) {
        return None;
    }
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = adj[i][j] / det;
        }
    }
    Some(out)
}

/// `J = [[0, 1], [−1, 0]]`: `J u₁ = −u₂`, `J u₂ = u₁`.
pub const J_CAN: Mat2 = [[0.0, 1.0], [-1.0, 0.0]];

/// `J = [[a, b], [c, −a]]` with `a² + bc = −1` on the branch `c < 0`.
pub fn j_from_chart(a: f64, c: f64) -> Mat2 {
    let b = (-1.0 - a * a) / c;
    [[a, b], [c, -a]]
}

pub fn j_squared_residual(j: &Mat2) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..2 {
        for c in 0..2 {
            let v = j[r][0] * j[0][c] + j[r][1] * j[1][c] + if r == c { 1.0 } else { 0.0 };
            worst = worst.max(v.abs());
        }
    }
    worst
}

impl LeftInvariantStructure {
    pub fn new(algebra: LieAlgebra3, theta: Vec3, j: Mat2) -> Self {
        Self { algebra, theta, j }
    }

    /// su(2) with `θ = s·σ³` and the given `J` on `span(e₁, e₂)`.
    pub fn su2(s: f64, j: Mat2) -> Self {
        Self::new(LieAlgebra3::su2(), [0.0, 0.0, s], j)
    }

    /// `dθ(X, Y) = −θ([X, Y])`.
    pub fn dtheta(&self, x: &Vec3, y: &Vec3) -> f64 {
        -dot(&self.theta, &self.algebra.bracket(x, y))
    }

    fn dtheta_c(&self, x: &CVec3, y: &CVec3) -> Complex64 {
        -dot_c(&to_c(&self.theta), &self.algebra.bracket_c(x, y))
    }

    /// Axial vector `w` of `Ω_ij = dθ(e_i, e_j)`: `ι_w dθ = 0`.
    fn axial(&self) -> Vec3 {
        let e = |i: usize| {
            let mut v = [0.0; 3];
            v[i] = 1.0;
            v
        };
        let om = |i: usize, j: usize| self.dtheta(&e(i), &e(j));
        [om(1, 2), om(2, 0), om(0, 1)]
    }

    /// `θ∧dθ(e₁, e₂, e₃)`.
    pub fn contact_volume_form(&self) -> f64 {
        dot(&self.theta, &self.axial())
    }

    /// `Vol(θ) = |θ∧dθ(e₁, e₂, e₃)|`, the basis parallelepiped having unit volume.
    pub fn volume(&self) -> f64 {
        self.contact_volume_form().abs()
    }

    fn check_contact(&self) -> Result<()> {
        let scale = dot(&self.theta, &self.theta)
            .powf(1.5)
            .max(f64::MIN_POSITIVE);
        if self.contact_volume_form().abs() <= 1e-14 * scale {
            return Err(TorsionError::DegenerateContact);
        }
        Ok(())
    }

    /// Basis `(u₁, u₂)` of `ker θ`. For `θ ∝ σ³` this is `(e₁, e₂)`.
    pub fn plane_basis(&self) -> [Vec3; 2] {
        let th = self.theta;
        let k = (0..3)
            .max_by(|&a, &b| th[a].abs().total_cmp(&th[b].abs()))
            .unwrap();
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let mut out = [[0.0; 3]; 2];
        for (n, &i) in others.iter().enumerate() {
            out[n][i] = 1.0;
            out[n][k] = -th[i] / th[k];
        }
        out
    }

    /// `J` applied to a real contact vector expressed in `(u₁, u₂)` coordinates.
    fn apply_j(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.j[0][0] * v[0] + self.j[0][1] * v[1],
            self.j[1][0] * v[0] + self.j[1][1] * v[1],
        ]
    }

    fn plane_vec(&self, v: [f64; 2]) -> Vec3 {
        let [u1, u2] = self.plane_basis();
        [
            v[0] * u1[0] + v[1] * u2[0],
            v[0] * u1[1] + v[1] * u2[1],
            v[0] * u1[2] + v[1] * u2[2],
        ]
    }

    /// `dθ(u₁, Ju₁)` and `dθ(u₂, Ju₂)` must both be positive, and `J² = −1`.
    fn check_compatible(&self) -> Result<()> {
        if j_squared_residual(&self.j) > 1e-9 {
            return Err(TorsionError::NonCompatibleJ);
        }
        for v in [[1.0, 0.0], [0.0, 1.0]] {
            let x = self.plane_vec(v);
            let jx = self.plane_vec(self.apply_j(v));
            if self.dtheta(&x, &jx) <= 0.0 {
                return Err(TorsionError::NonCompatibleJ);
            }
        }
        Ok(())
    }
}

/// `θ(T) = 1`, `ι_T dθ = 0`.
pub fn reeb_vector(s: &LeftInvariantStructure) -> Result<Vec3> {
    s.check_contact()?;
    let w = s.axial();
    let n = dot(&s.theta, &w);
    Ok([w[0] / n, w[1] / n, w[2] / n])
}

pub fn adapted_coframe(s: &LeftInvariantStructure) -> Result<AdaptedCoframe> {
    adapted_coframe_with_phase(s, &Phase::Standard)
}

/// `Z₁ = μ(u₁ − iJu₁)` with `|μ|² = 1/(2dθ(u₁, Ju₁))` so that
/// `−i dθ(Z₁, Z₁̄) = 1`; the phase of `μ` is set by `phase`.
pub fn adapted_coframe_with_phase(
    s: &LeftInvariantStructure,
    phase: &Phase,
) -> Result<AdaptedCoframe> {
    let t = reeb_vector(s)?;
    s.check_compatible()?;
    let u = s.plane_vec([1.0, 0.0]);
    let ju = s.plane_vec(s.apply_j([1.0, 0.0]));
    let levi = s.dtheta(&u, &ju);
    let m = (1.0 / (2.0 * levi)).sqrt();
    let raw: CVec3 = [
        Complex64::new(u[0], -ju[0]),
        Complex64::new(u[1], -ju[1]),
        Complex64::new(u[2], -ju[2]),
    ];
    let mu = match phase {
        Phase::Standard => Complex64::new(m, 0.0),
        Phase::Reference(r) => {
            let v = dot_c(r, &raw);
            if v.norm() == 0.0 {
                return Err(TorsionError::SingularSystem);
            }
            Complex64::new(m, 0.0) * (v.conj() / v.norm())
        }
    };
    let z1 = [raw[0] * mu, raw[1] * mu, raw[2] * mu];
    let zb = conj3(&z1);
    let tc = to_c(&t);
    let mat = [
        [tc[0], z1[0], zb[0]],
        [tc[1], z1[1], zb[1]],
        [tc[2], z1[2], zb[2]],
    ];
    let inv = inverse3(&mat).ok_or(TorsionError::SingularSystem)?;
    Ok(AdaptedCoframe {
        t,
        z1,
        theta1: inv[1],
    })
}

/// Coframe values `(θ(V), θ¹(V), θ¹̄(V))`.
fn coframe_values(
    s: &LeftInvariantStructure,
    cf: &AdaptedCoframe,
    v: &CVec3,
) -> (Complex64, Complex64, Complex64) {
    let th1 = dot_c(&cf.theta1, v);
    let th1b = dot_c(&conj3(&cf.theta1), v);
    (dot_c(&to_c(&s.theta), v), th1, th1b)
}

/// `dθ¹(X, Y) = −θ¹([X, Y])`.
fn dtheta1(s: &LeftInvariantStructure, cf: &AdaptedCoframe, x: &CVec3, y: &CVec3) -> Complex64 {
    -dot_c(&cf.theta1, &s.algebra.bracket_c(x, y))
}

/// Solve `dθ¹ = θ¹∧ω₁¹ + θ∧A₁̄₁̄θ¹̄` with `ω₁¹ + ω₁̄¹̄ = 0`, then
/// `W = dω₁¹(Z₁, Z₁̄)`.
pub fn solve_structure_equations(
    s: &LeftInvariantStructure,
    cf: &AdaptedCoframe,
) -> Result<PseudohermitianGeometry> {
    let z = cf.z1;
    let zb = conj3(&z);
    let t = to_c(&cf.t);
    // Adaptedness is a precondition; a broken coframe makes the system singular.
    let (th_t, th1_t, _) = coframe_values(s, cf, &t);
    let (th_z, th1_z, th1b_z) = coframe_values(s, cf, &z);
    let bad = |a: Complex64, b: f64| (a - b).norm() > 1e-9;
    if bad(th_t, 1.0) || bad(th1_t, 0.0) || bad(th_z, 0.0) || bad(th1_z, 1.0) || bad(th1b_z, 0.0) {
        return Err(TorsionError::SingularSystem);
    }
    let q = dtheta1(s, cf, &z, &zb);
    let r = -dtheta1(s, cf, &t, &z);
    let a1b1b = dtheta1(s, cf, &t, &zb);
    let p = -q.conj();
    let mut g = PseudohermitianGeometry {
        omega: (p, q, r),
        a11: a1b1b.conj(),
        w: 0.0,
        ricci: 0.0,
    };
    let br = s.algebra.bracket_c(&z, &zb);
    let (a, b, c) = coframe_values(s, cf, &br);
    let w = -g.omega_on(a, b, c);
    g.w = w.re;
    g.ricci = w.re;
    Ok(g)
}

/// Structure equations for `(J, θ)` with the standard phase.
pub fn geometry(s: &LeftInvariantStructure) -> Result<PseudohermitianGeometry> {
    solve_structure_equations(s, &adapted_coframe(s)?)
}

/// Largest component of `dθ¹ − θ¹∧ω₁¹ − θ∧A₁̄₁̄θ¹̄` over basis pairs.
pub fn structure_residual(
    s: &LeftInvariantStructure,
    cf: &AdaptedCoframe,
    g: &PseudohermitianGeometry,
) -> f64 {
    let e = |i: usize| {
        let mut v = [Complex64::new(0.0, 0.0); 3];
        v[i] = Complex64::new(1.0, 0.0);
        v
    };
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let (x, y) = (e(i), e(j));
            let (tx, t1x, t1bx) = coframe_values(s, cf, &x);
            let (ty, t1y, t1by) = coframe_values(s, cf, &y);
            let wx = g.omega_on(tx, t1x, t1bx);
            let wy = g.omega_on(ty, t1y, t1by);
            let wedge1 = t1x * wy - t1y * wx;
            let tau_x = g.a1b1b() * t1bx;
            let tau_y = g.a1b1b() * t1by;
            let wedge2 = tx * tau_y - ty * tau_x;
            let res = dtheta1(s, cf, &x, &y) - wedge1 - wedge2;
            worst = worst.max(res.norm());
        }
    }
    worst
}

/// Largest residual of the adapted-coframe relations, including
/// `dθ = iθ¹∧θ¹̄` on basis pairs.
pub fn coframe_residual(s: &LeftInvariantStructure, cf: &AdaptedCoframe) -> f64 {
    let z = cf.z1;
    let zb = conj3(&z);
    let t = to_c(&cf.t);
    let mut worst = 0.0f64;
    let mut push = |v: Complex64| worst = worst.max(v.norm());
    let (th_t, th1_t, _) = coframe_values(s, cf, &t);
    let (th_z, th1_z, th1b_z) = coframe_values(s, cf, &z);
    push(th_t - 1.0);
    push(th1_t);
    push(th_z);
    push(th1_z - 1.0);
    push(th1b_z);
    for i in 0..3 {
        let mut ei = [0.0; 3];
        ei[i] = 1.0;
        push(s.dtheta(&cf.t, &ei).into());
        for j in 0..3 {
            let mut ej = [0.0; 3];
            ej[j] = 1.0;
            let (_, a1, a1b) = coframe_values(s, cf, &to_c(&ei));
            let (_, b1, b1b) = coframe_values(s, cf, &to_c(&ej));
            push(s.dtheta(&ei, &ej) - I * (a1 * b1b - b1 * a1b));
        }
    }
    push(s.dtheta_c(&z, &zb) - I);
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn jacobi() {
        assert!(jacobi_check(&LieAlgebra3::su2()));
        assert!(jacobi_check(&LieAlgebra3::heisenberg()));
        // Diagonal constants satisfy Jacobi whatever their signs.
        let flipped =
            LieAlgebra3::from_brackets([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, -1.0, 0.0]);
        assert!(jacobi_check(&flipped));
        let bad = LieAlgebra3::from_brackets([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [1.0, 0.0, 0.0]);
        assert!(!jacobi_check(&bad));
    }

    #[test]
    fn reeb_examples() {
        let s = LeftInvariantStructure::su2(1.0, J_CAN);
        assert_eq!(reeb_vector(&s).unwrap(), [0.0, 0.0, 1.0]);
        let s = LeftInvariantStructure::su2(2.0, J_CAN);
        assert_eq!(reeb_vector(&s).unwrap(), [0.0, 0.0, 0.5]);
        let h = LeftInvariantStructure::new(LieAlgebra3::heisenberg(), [0.0, 0.0, 1.0], J_CAN);
        assert_eq!(reeb_vector(&h).unwrap(), [0.0, 0.0, 1.0]);
        let deg = LeftInvariantStructure::new(LieAlgebra3::heisenberg(), [1.0, 0.0, 0.0], J_CAN);
        assert_eq!(reeb_vector(&deg), Err(TorsionError::DegenerateContact));
    }

    #[test]
    fn canonical_frame() {
        let s = LeftInvariantStructure::su2(1.0, J_CAN);
        let cf = adapted_coframe(&s).unwrap();
        assert_abs_diff_eq!(cf.z1[0].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(cf.z1[1].im, 0.5, epsilon = 1e-15);
        assert!(coframe_residual(&s, &cf) < 1e-14);
        let g = solve_structure_equations(&s, &cf).unwrap();
        assert_abs_diff_eq!(g.w, 2.0, epsilon = 1e-14);
        assert!(g.a11.norm() < 1e-14);
        assert_abs_diff_eq!(g.omega.2.im, -2.0, epsilon = 1e-14);
        assert!(structure_residual(&s, &cf, &g) < 1e-14);
    }

    #[test]
    fn incompatible_j_rejected() {
        let s = LeftInvariantStructure::su2(1.0, [[0.0, -1.0], [1.0, 0.0]]);
        assert_eq!(adapted_coframe(&s), Err(TorsionError::NonCompatibleJ));
    }
}
