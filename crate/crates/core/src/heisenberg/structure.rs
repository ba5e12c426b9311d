//! Pseudohermitian structures `θ̂ = e^{2φ}θ₀` on the Heisenberg group with
//! `φ` an integer combination of the basis generators.
//!
//! Connection, torsion and curvature are kept as exact jets. A rescaled
//! structure is built from its parent by the transformation laws; `solve`
//! recomputes everything from the coframe by exterior calculus instead.

use super::frame::{OneForm, TwoForm, VectorField};
use super::jet::{Basis, Weight, WeightedJet};
use crate::error::{Result, TorsionError};
use std::sync::Arc;

type Jet = WeightedJet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    Z1,
    Z1bar,
    T,
}

impl Dir {
    /// Contribution of a lower index in this slot to the charge.
    pub fn charge(self) -> i32 {
        match self {
            Dir::Z1 => 1,
            Dir::Z1bar => -1,
            Dir::T => 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HeisenbergStructure {
    basis: Arc<Basis>,
    exponent: Weight,
    z: VectorField,
    t: VectorField,
    theta: OneForm,
    theta1: OneForm,
    omega_z: Jet,
    omega_zb: Jet,
    omega_t: Jet,
    a11: Jet,
    webster: Jet,
}

/// Connection, torsion and curvature recovered from the coframe alone.
#[derive(Clone, Debug, PartialEq)]
pub struct SolvedConnection {
    pub omega_z: Jet,
    pub omega_zb: Jet,
    pub omega_t: Jet,
    pub a1b1b: Jet,
    pub webster: Jet,
}

/// Residuals of the defining relations of an adapted coframe.
#[derive(Clone, Debug)]
pub struct StructureResiduals {
    pub levi: TwoForm,
    pub duality: Vec<Jet>,
    pub first_structure: TwoForm,
    pub reality: Jet,
}

impl StructureResiduals {
    pub fn is_zero(&self) -> bool {
        self.levi.is_zero()
            && self.duality.iter().all(Jet::is_zero)
            && self.first_structure.is_zero()
            && self.reality.is_zero()
    }
}

impl HeisenbergStructure {
    /// The flat structure `(θ₀, J₀)`.
    pub fn flat(basis: &Arc<Basis>) -> Self {
        let zero = Jet::zero(basis);
        Self {
            basis: basis.clone(),
            exponent: vec![0; basis.len()],
            z: VectorField::flat_z(basis),
            t: VectorField::flat_t(basis),
            theta: OneForm::flat_theta(basis),
            theta1: OneForm::flat_theta1(basis),
            omega_z: zero.clone(),
            omega_zb: zero.clone(),
            omega_t: zero.clone(),
            a11: zero.clone(),
            webster: zero,
        }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    /// `φ` with `θ̂ = e^{2φ}θ₀`, as weights over the basis.
    pub fn exponent(&self) -> &[i32] {
        &self.exponent
    }

    pub fn is_flat(&self) -> bool {
        self.exponent.iter().all(|&k| k == 0)
    }

    pub fn field(&self, dir: Dir) -> VectorField {
        match dir {
            Dir::Z1 => self.z.clone(),
            Dir::Z1bar => self.z.conj(),
            Dir::T => self.t.clone(),
        }
    }

    pub fn theta(&self) -> &OneForm {
        &self.theta
    }

    pub fn theta1(&self) -> &OneForm {
        &self.theta1
    }

    /// `ω₁¹(V)` for the frame field `V` in direction `dir`.
    pub fn omega(&self, dir: Dir) -> &Jet {
        match dir {
            Dir::Z1 => &self.omega_z,
            Dir::Z1bar => &self.omega_zb,
            Dir::T => &self.omega_t,
        }
    }

    pub fn a11(&self) -> &Jet {
        &self.a11
    }

    pub fn a1b1b(&self) -> Jet {
        self.a11.conj()
    }

    pub fn webster(&self) -> &Jet {
        &self.webster
    }

    /// `ω₁¹` expanded in the flat coframe.
    pub fn connection_form(&self) -> OneForm {
        self.theta1
            .scale(&self.omega_z)
            .add(&self.theta1.conj().scale(&self.omega_zb))
            .add(&self.theta.scale(&self.omega_t))
    }

    /// Frame derivative `Ẑ₁u`, `Ẑ₁̄u` or `T̂u`.
    pub fn deriv(&self, u: &Jet, dir: Dir) -> Jet {
        match dir {
            Dir::Z1 => self.z.apply(u),
            Dir::Z1bar => self.z.conj().apply(u),
            Dir::T => self.t.apply(u),
        }
    }

    /// Covariant derivative of a tensor component of the given charge
    /// (number of lower `1` minus lower `1̄` indices, after lowering with
    /// `h₁₁̄ = 1`).
    pub fn cov(&self, u: &Jet, charge: i32, dir: Dir) -> Jet {
        let mut out = self.deriv(u, dir);
        if charge != 0 {
            let w = self.omega(dir);
            if !w.is_zero() {
                out.add_assign(&(w * u).scale_int(-(charge as i64)));
            }
        }
        out
    }

    /// Rescale by `e^{2 w·F}` using the transformation laws.
    pub fn hat(&self, w: &[i32]) -> Self {
        let b = &self.basis;
        assert_eq!(w.len(), b.len(), "weight length must match the basis");
        let e = |k: i32| Jet::exp(b, w.iter().map(|x| x * k).collect());
        let two_i = |j: &Jet| j.mul_i().scale_int(2);

        let g = Jet::from_poly(b, b.combine(w));
        let g1 = self.deriv(&g, Dir::Z1);
        let g1b = self.deriv(&g, Dir::Z1bar);
        let g1g1b = &g1 * &g1b;
        let lap_g = &self.cov(&g1, 1, Dir::Z1bar) + &self.cov(&g1b, -1, Dir::Z1);
        let g11 = self.cov(&g1, 1, Dir::Z1);

        let zb = self.z.conj();
        let z = self.z.scale(&e(-1));
        let t = self
            .t
            .add(&zb.scale(&two_i(&g1)))
            .add(&self.z.scale(&-&two_i(&g1b)))
            .scale(&e(-2));
        let theta = self.theta.scale(&e(2));
        let theta1 = self
            .theta1
            .add(&self.theta.scale(&two_i(&g1b)))
            .scale(&e(1));

        let omega_z = &e(-1) * &(&self.omega_z + &g1.scale_int(3));
        let omega_zb = -&omega_z.conj();
        let mut ot = self.omega_t.clone();
        ot.add_assign(&two_i(&(&g1 * &self.omega_zb)));
        ot.add_assign(&-&two_i(&(&g1b * &self.omega_z)));
        ot.add_assign(&(&lap_g - &g1g1b.scale_int(4)).mul_i());
        let omega_t = &e(-2) * &ot;

        let mut a = self.a11.clone();
        a.add_assign(&two_i(&g11));
        a.add_assign(&(&g1 * &g1).mul_i().scale_int(-4));
        let a11 = &e(-2) * &a;

        let mut wb = self.webster.clone();
        wb.add_assign(&lap_g.scale_int(-4));
        wb.add_assign(&g1g1b.scale_int(-8));
        let webster = &e(-2) * &wb;

        Self {
            basis: b.clone(),
            exponent: self.exponent.iter().zip(w).map(|(a, b)| a + b).collect(),
            z,
            t,
            theta,
            theta1,
            omega_z,
            omega_zb,
            omega_t,
            a11,
            webster,
        }
    }

    /// Solve the structure equations from the coframe alone:
    /// `dθ̂¹ = θ̂¹∧ω₁¹ + θ̂∧A₁̄₁̄θ̂¹̄` and `W = dω₁¹(Ẑ, Ẑ̄)`.
    pub fn solve(&self) -> SolvedConnection {
        let dth1 = self.theta1.d();
        let z = &self.z;
        let zb = z.conj();
        let omega_zb = dth1.eval(z, &zb);
        let omega_t = -&dth1.eval(&self.t, z);
        let a1b1b = dth1.eval(&self.t, &zb);
        let omega_z = -&omega_zb.conj();
        let form = self
            .theta1
            .scale(&omega_z)
            .add(&self.theta1.conj().scale(&omega_zb))
            .add(&self.theta.scale(&omega_t));
        let webster = form.d().eval(z, &zb);
        SolvedConnection {
            omega_z,
            omega_zb,
            omega_t,
            a1b1b,
            webster,
        }
    }

    pub fn residuals(&self) -> StructureResiduals {
        let b = &self.basis;
        let th1b = self.theta1.conj();
        let levi = self.theta.d().sub(&self.theta1.wedge(&th1b).mul_i());
        let zb = self.z.conj();
        let one = Jet::one(b);
        let duality = vec![
            &self.theta.eval(&self.t) - &one,
            self.theta.eval(&self.z),
            self.theta1.eval(&self.t),
            &self.theta1.eval(&self.z) - &one,
            self.theta1.eval(&zb),
        ];
        let omega = self.connection_form();
        let tau = th1b.scale(&self.a1b1b());
        let first_structure = self
            .theta1
            .d()
            .sub(&self.theta1.wedge(&omega))
            .sub(&self.theta.wedge(&tau));
        let reality = &self.omega_t + &self.omega_t.conj();
        StructureResiduals {
            levi,
            duality,
            first_structure,
            reality,
        }
    }
}

/// Index slot of a tensor component.
pub type Index = Dir;

/// A tensor component `σ_{i₁…i_k}` on a Heisenberg structure. Upper indices
/// are lowered with `h₁₁̄ = 1` before construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub value: Jet,
    pub indices: Vec<Index>,
}

/// Highest input rank accepted by [`covariant_derivative`].
pub const MAX_RANK: usize = 4;

impl Component {
    pub fn scalar(value: Jet) -> Self {
        Self {
            value,
            indices: Vec::new(),
        }
    }

    pub fn new(value: Jet, indices: Vec<Index>) -> Self {
        Self { value, indices }
    }

    pub fn charge(&self) -> i32 {
        self.indices.iter().map(|d| d.charge()).sum()
    }
}

/// `σ_{…,k}` on the given structure.
pub fn covariant_derivative(
    s: &HeisenbergStructure,
    sigma: &Component,
    index: Index,
) -> Result<Component> {
    if sigma.indices.len() > MAX_RANK {
        return Err(TorsionError::UnsupportedIndexType(format!(
            "rank {} exceeds {}",
            sigma.indices.len(),
            MAX_RANK
        )));
    }
    let mut indices = sigma.indices.clone();
    indices.push(index);
    Ok(Component {
        value: s.cov(&sigma.value, sigma.charge(), index),
        indices,
    })
}
