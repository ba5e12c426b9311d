//! Vector fields and forms expanded in the flat frame `(T, Z₁, Z₁̄)` and its
//! dual coframe `(θ₀, θ¹, θ¹̄)`, with jet coefficients.
//!
//! Flat frame: `θ₀ = dt + 2x dy − 2y dx`, `θ¹ = √2 dz`,
//! `Z₁ = (∂_z + i z̄ ∂_t)/√2`, `T = ∂_t`, so that `dθ₀ = i θ¹∧θ¹̄`.

use super::jet::{Basis, WeightedJet};
use std::sync::Arc;

type Jet = WeightedJet;

/// `t·T + z·Z₁ + zb·Z₁̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub t: Jet,
    pub z: Jet,
    pub zb: Jet,
}

/// `t·θ₀ + z·θ¹ + zb·θ¹̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm {
    pub t: Jet,
    pub z: Jet,
    pub zb: Jet,
}

/// `tz·θ₀∧θ¹ + tzb·θ₀∧θ¹̄ + zzb·θ¹∧θ¹̄`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm {
    pub tz: Jet,
    pub tzb: Jet,
    pub zzb: Jet,
}

impl VectorField {
    pub fn flat_t(b: &Arc<Basis>) -> Self {
        Self {
            t: Jet::one(b),
            z: Jet::zero(b),
            zb: Jet::zero(b),
        }
    }

    pub fn flat_z(b: &Arc<Basis>) -> Self {
        Self {
            t: Jet::zero(b),
            z: Jet::one(b),
            zb: Jet::zero(b),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            t: self.t.conj(),
            z: self.zb.conj(),
            zb: self.z.conj(),
        }
    }

    pub fn scale(&self, c: &Jet) -> Self {
        Self {
            t: c * &self.t,
            z: c * &self.z,
            zb: c * &self.zb,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            t: &self.t + &o.t,
            z: &self.z + &o.z,
            zb: &self.zb + &o.zb,
        }
    }

    /// Directional derivative of a jet.
    pub fn apply(&self, u: &Jet) -> Jet {
        let mut out = Jet::zero(u.basis());
        if !self.t.is_zero() {
            out.add_assign(&(&self.t * &u.dt()));
        }
        if !self.z.is_zero() {
            out.add_assign(&(&self.z * &u.z1()));
        }
        if !self.zb.is_zero() {
            out.add_assign(&(&self.zb * &u.z1bar()));
        }
        out
    }
}

impl OneForm {
    pub fn flat_theta(b: &Arc<Basis>) -> Self {
        Self {
            t: Jet::one(b),
            z: Jet::zero(b),
            zb: Jet::zero(b),
        }
    }

    pub fn flat_theta1(b: &Arc<Basis>) -> Self {
        Self {
            t: Jet::zero(b),
            z: Jet::one(b),
            zb: Jet::zero(b),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            t: self.t.conj(),
            z: self.zb.conj(),
            zb: self.z.conj(),
        }
    }

    pub fn scale(&self, c: &Jet) -> Self {
        Self {
            t: c * &self.t,
            z: c * &self.z,
            zb: c * &self.zb,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            t: &self.t + &o.t,
            z: &self.z + &o.z,
            zb: &self.zb + &o.zb,
        }
    }

    pub fn eval(&self, v: &VectorField) -> Jet {
        &(&(&self.t * &v.t) + &(&self.z * &v.z)) + &(&self.zb * &v.zb)
    }

    /// Exterior derivative, using `dθ₀ = iθ¹∧θ¹̄` and `dθ¹ = 0`.
    pub fn d(&self) -> TwoForm {
        let (c, a, b) = (&self.t, &self.z, &self.zb);
        // d(cθ₀) = −c₁ θ₀∧θ¹ − c₁̄ θ₀∧θ¹̄ + i c θ¹∧θ¹̄
        // d(aθ¹) = a₀ θ₀∧θ¹ − a₁̄ θ¹∧θ¹̄
        // d(bθ¹̄) = b₀ θ₀∧θ¹̄ + b₁ θ¹∧θ¹̄
        TwoForm {
            tz: &a.dt() - &c.z1(),
            tzb: &b.dt() - &c.z1bar(),
            zzb: &(&c.mul_i() - &a.z1bar()) + &b.z1(),
        }
    }

    pub fn wedge(&self, o: &Self) -> TwoForm {
        let m = |a: &Jet, b: &Jet, c: &Jet, d: &Jet| &(a * b) - &(c * d);
        TwoForm {
            tz: m(&self.t, &o.z, &self.z, &o.t),
            tzb: m(&self.t, &o.zb, &self.zb, &o.t),
            zzb: m(&self.z, &o.zb, &self.zb, &o.z),
        }
    }
}

impl TwoForm {
    pub fn eval(&self, x: &VectorField, y: &VectorField) -> Jet {
        let m = |a: &Jet, b: &Jet, c: &Jet, d: &Jet| &(a * b) - &(c * d);
        let tz = m(&x.t, &y.z, &x.z, &y.t);
        let tzb = m(&x.t, &y.zb, &x.zb, &y.t);
        let zzb = m(&x.z, &y.zb, &x.zb, &y.z);
        &(&(&self.tz * &tz) + &(&self.tzb * &tzb)) + &(&self.zzb * &zzb)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            tz: &self.tz - &o.tz,
            tzb: &self.tzb - &o.tzb,
            zzb: &self.zzb - &o.zzb,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            tz: &self.tz + &o.tz,
            tzb: &self.tzb + &o.tzb,
            zzb: &self.zzb + &o.zzb,
        }
    }

    pub fn mul_i(&self) -> Self {
        Self {
            tz: self.tz.mul_i(),
            tzb: self.tzb.mul_i(),
            zzb: self.zzb.mul_i(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.tz.is_zero() && self.tzb.is_zero() && self.zzb.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Coeff, Poly};

    fn coordinate_theta0(b: &Arc<Basis>) -> (Jet, Jet, Jet) {
        // θ₀ = dt + 2x dy − 2y dx, as coefficients on (dx, dy, dt).
        (
            Jet::from_poly(b, Poly::y().scale_int(-2)),
            Jet::from_poly(b, Poly::x().scale_int(2)),
            Jet::one(b),
        )
    }

    #[test]
    fn flat_coframe_is_dual_and_theta0_is_contact() {
        let b = Basis::empty();
        let t = VectorField::flat_t(&b);
        let z = VectorField::flat_z(&b);
        let th = OneForm::flat_theta(&b);
        let th1 = OneForm::flat_theta1(&b);
        assert_eq!(th.eval(&t), Jet::one(&b));
        assert!(th.eval(&z).is_zero());
        assert_eq!(th1.eval(&z), Jet::one(&b));
        assert!(th1.eval(&z.conj()).is_zero());
        // dθ₀ = i θ¹∧θ¹̄
        let d = th.d();
        let expected = th1.wedge(&th1.conj()).zzb.mul_i();
        assert_eq!(d.zzb, expected);
        assert!(d.tz.is_zero() && d.tzb.is_zero());
    }

    #[test]
    fn coordinate_form_agrees_with_frame() {
        // Evaluate the coordinate expression of θ₀ on Z₁ and T through the
        // coordinate components of the frame fields.
        let b = Basis::empty();
        let (ax, ay, at) = coordinate_theta0(&b);
        // Z₁ has coordinate components (Z₁x, Z₁y, Z₁t).
        let zx = Jet::from_poly(&b, Poly::x().z1());
        let zy = Jet::from_poly(&b, Poly::y().z1());
        let zt = Jet::from_poly(&b, Poly::t().z1());
        let v = &(&(&ax * &zx) + &(&ay * &zy)) + &(&at * &zt);
        assert!(v.is_zero());
        // Levi form: dθ₀(Z₁, Z₁̄) = 4(dx∧dy)(Z₁, Z₁̄) = i.
        let zbx = zx.conj();
        let zby = zy.conj();
        let levi = (&(&zx * &zby) - &(&zy * &zbx)).scale_int(4);
        assert_eq!(levi, Jet::constant(&b, Coeff::i()));
    }
}
