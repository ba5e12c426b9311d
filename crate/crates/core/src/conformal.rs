//! Contact-form rescalings `θ̂ = e^{2f}θ₀` of the flat Heisenberg structure:
//! transformed connection, torsion and curvature, pluriharmonic functions,
//! and the exact identities relating hatted and flat quantities.

use crate::error::{Result, TorsionError};
use crate::exact::{Coeff, Poly, Q};
use crate::heisenberg::frame::{OneForm, VectorField};
use crate::heisenberg::operators::{bianchi_w0_residual, paneitz_p0, paneitz_p1};
use crate::heisenberg::{Basis, Dir, HeisenbergStructure, WeightedJet};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

type Jet = WeightedJet;

/// A real conformal exponent `f`.
#[derive(Clone, Debug)]
pub struct ConformalChange {
    f: Poly,
    basis: Arc<Basis>,
}

impl ConformalChange {
    pub fn new(f: Poly) -> Result<Self> {
        if !f.is_real() {
            return Err(TorsionError::NonRealFactor);
        }
        Ok(Self {
            basis: Basis::new(vec![f.clone()]),
            f,
        })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn flat(&self) -> HeisenbergStructure {
        HeisenbergStructure::flat(&self.basis)
    }

    pub fn hatted(&self) -> HeisenbergStructure {
        self.flat().hat(&[1])
    }

    /// `f` as a weight-zero jet.
    pub fn f_jet(&self) -> Jet {
        Jet::from_poly(&self.basis, self.f.clone())
    }

    /// `e^{kf}`.
    pub fn exp(&self, k: i32) -> Jet {
        Jet::exp(&self.basis, vec![k])
    }
}

/// Hatted connection coefficients together with the hatted frame.
#[derive(Clone, Debug)]
pub struct ConnectionRecord {
    /// `ω̂₁¹(Ẑ₁)`, `ω̂₁¹(Ẑ₁̄)`, `ω̂₁¹(T̂)`.
    pub omega_z: Jet,
    pub omega_zbar: Jet,
    pub omega_t: Jet,
    /// `ω̂₁¹` expanded in the flat coframe `(θ₀, θ¹, θ¹̄)`.
    pub in_background_coframe: OneForm,
    pub z1: VectorField,
    pub t: VectorField,
}

pub fn hat_connection_coefficients(f: &Poly) -> Result<ConnectionRecord> {
    let s = ConformalChange::new(f.clone())?.hatted();
    Ok(ConnectionRecord {
        omega_z: s.omega(Dir::Z1).clone(),
        omega_zbar: s.omega(Dir::Z1bar).clone(),
        omega_t: s.omega(Dir::T).clone(),
        in_background_coframe: s.connection_form(),
        z1: s.field(Dir::Z1),
        t: s.field(Dir::T),
    })
}

/// `Â₁₁ = e^{−2f}(2i f₁₁ − 4i f₁²)`.
pub fn hat_torsion(change: &ConformalChange) -> Jet {
    change.hatted().a11().clone()
}

/// `Ŵ = e^{−2f}(−4Δ_b f − 8 f₁f₁̄)`.
pub fn hat_webster(change: &ConformalChange) -> Jet {
    change.hatted().webster().clone()
}

/// A polynomial `Σ c_{jk} z^j w^k` in the CR coordinates `z` and
/// `w = t + i(x² + y²)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HoloPoly {
    pub terms: BTreeMap<(u16, u16), Coeff>,
}

impl HoloPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, j: u16, k: u16, c: Coeff) -> Self {
        let e = self.terms.entry((j, k)).or_default();
        *e += &c;
        self
    }

    pub fn degree(&self) -> u16 {
        self.terms.keys().map(|(j, k)| j + k).max().unwrap_or(0)
    }

    /// Expand in `(x, y, t)`.
    pub fn expand(&self) -> Poly {
        let z = Poly::z();
        let w = Poly::w();
        let mut out = Poly::zero();
        for ((j, k), c) in &self.terms {
            let m = &z.pow(*j as u32) * &w.pow(*k as u32);
            out.add_assign(&m.scale(c));
        }
        out
    }
}

/// `Re(holo(z, w))`, which is CR-pluriharmonic.
pub fn pluriharmonic_generator(holo: &HoloPoly) -> Poly {
    holo.expand().real_part()
}

/// Whether `P₁g = 0` on the flat structure.
pub fn is_pluriharmonic(g: &Poly) -> Result<bool> {
    if !g.is_real() {
        return Err(TorsionError::PreconditionViolated("g must be real".into()));
    }
    let b = Basis::empty();
    let s = HeisenbergStructure::flat(&b);
    let gj = Jet::from_poly(&b, g.clone());
    let ok = paneitz_p1(&s, &gj).is_zero();
    if ok {
        debug_assert!(paneitz_p0(&s, &gj).is_zero());
    }
    Ok(ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    LeeVector,
    LeeDivergence,
    PaneitzP1Cov,
    PaneitzP0Cov,
    GaugeBianchi,
    BianchiW0,
}

impl IdentityId {
    pub const ALL: [IdentityId; 6] = [
        IdentityId::LeeVector,
        IdentityId::LeeDivergence,
        IdentityId::PaneitzP1Cov,
        IdentityId::PaneitzP0Cov,
        IdentityId::GaugeBianchi,
        IdentityId::BianchiW0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::LeeVector => "LEE_VECTOR",
            IdentityId::LeeDivergence => "LEE_DIVERGENCE",
            IdentityId::PaneitzP1Cov => "PANEITZ_P1_COV",
            IdentityId::PaneitzP0Cov => "PANEITZ_P0_COV",
            IdentityId::GaugeBianchi => "GAUGE_BIANCHI",
            IdentityId::BianchiW0 => "BIANCHI_W0",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct IdentityResidualReport {
    pub identity_id: IdentityId,
    pub residual: Jet,
    pub is_zero: bool,
    pub max_abs_at_samples: f64,
}

/// 27 rational points `{−2/3, 1/5, 3/4}³` in `[−1, 1]³`.
pub fn sample_points() -> Vec<[Q; 3]> {
    let vals = [
        Q::new((-2).into(), 3.into()),
        Q::new(1.into(), 5.into()),
        Q::new(3.into(), 4.into()),
    ];
    let mut out = Vec::with_capacity(27);
    for a in &vals {
        for b in &vals {
            for c in &vals {
                out.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out
}

pub fn max_abs_at_samples(j: &Jet) -> f64 {
    if j.is_zero() {
        return 0.0;
    }
    sample_points()
        .iter()
        .map(|p| j.eval(p).norm())
        .fold(0.0, f64::max)
}

/// `Ŵ₁ − iÂ₁₁,₁̄` on a structure.
fn lee_vector(s: &HeisenbergStructure) -> Jet {
    let w1 = s.deriv(s.webster(), Dir::Z1);
    let a_div = s.cov(s.a11(), 2, Dir::Z1bar);
    &w1 - &a_div.mul_i()
}

/// Left side minus right side of the selected identity, for `θ̂ = e^{2f}θ₀`.
pub fn identity_residual(
    id: IdentityId,
    change: &ConformalChange,
) -> Result<IdentityResidualReport> {
    let flat = change.flat();
    let fj = change.f_jet();
    let residual = match id {
        IdentityId::LeeVector => {
            let s = change.hatted();
            let rhs = paneitz_p1(&flat, &fj).shift(&[-3]).scale_int(-6);
            &lee_vector(&s) - &rhs
        }
        IdentityId::LeeDivergence => {
            let s = change.hatted();
            let lhs = s.cov(&lee_vector(&s), 1, Dir::Z1bar);
            let rhs = paneitz_p0(&flat, &fj).shift(&[-4]).scale_int(-6);
            &lhs - &rhs
        }
        IdentityId::PaneitzP1Cov => {
            let s = change.hatted();
            &paneitz_p1(&s, &fj) - &paneitz_p1(&flat, &fj).shift(&[-3])
        }
        IdentityId::PaneitzP0Cov => {
            let s = change.hatted();
            &paneitz_p0(&s, &fj) - &paneitz_p0(&flat, &fj).shift(&[-4])
        }
        IdentityId::GaugeBianchi => {
            if !is_pluriharmonic(change.f())? {
                return Err(TorsionError::PreconditionViolated(
                    "GAUGE_BIANCHI needs a CR-pluriharmonic conformal factor".into(),
                ));
            }
            // η₁ + iF₁₁,₁̄ with (F, η) = (Â, −Ŵ).
            -&lee_vector(&change.hatted())
        }
        IdentityId::BianchiW0 => bianchi_w0_residual(&change.hatted()),
    };
    let is_zero = residual.is_zero();
    let max_abs = max_abs_at_samples(&residual);
    Ok(IdentityResidualReport {
        identity_id: id,
        residual,
        is_zero,
        max_abs_at_samples: max_abs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(p: &Poly) -> Poly {
        p * p
    }

    #[test]
    fn torsion_examples() {
        let c = ConformalChange::new(Poly::x()).unwrap();
        assert_eq!(
            hat_torsion(&c),
            Jet::weighted(
                c.basis(),
                vec![-2],
                Poly::constant(Coeff::ratio(-1, 2).mul_i())
            )
        );
        let c = ConformalChange::new(Poly::t()).unwrap();
        let expected = sq(&Poly::zbar()).mul_i().scale_int(2);
        assert_eq!(
            hat_torsion(&c),
            Jet::weighted(c.basis(), vec![-2], expected)
        );
        let c = ConformalChange::new(Poly::zero()).unwrap();
        assert!(hat_torsion(&c).is_zero());
    }

    #[test]
    fn webster_examples() {
        let c = ConformalChange::new(Poly::x()).unwrap();
        assert_eq!(
            hat_webster(&c),
            Jet::weighted(c.basis(), vec![-2], Poly::from_int(-1))
        );
        let c = ConformalChange::new(Poly::t()).unwrap();
        let r2 = &sq(&Poly::x()) + &sq(&Poly::y());
        assert_eq!(
            hat_webster(&c),
            Jet::weighted(c.basis(), vec![-2], r2.scale_int(-4))
        );
    }

    #[test]
    fn connection_examples() {
        let rec = hat_connection_coefficients(&Poly::x()).unwrap();
        assert_eq!(
            rec.in_background_coframe.t,
            Jet::constant(&rec.omega_t.basis().clone(), Coeff::i())
        );
        let rec = hat_connection_coefficients(&Poly::from_int(5)).unwrap();
        assert!(rec.omega_z.is_zero() && rec.omega_t.is_zero());
        assert!(rec.in_background_coframe.t.is_zero());
        assert!(matches!(
            hat_connection_coefficients(&Poly::x().mul_i()),
            Err(TorsionError::NonRealFactor)
        ));
    }

    #[test]
    fn generator_examples() {
        let g = |j, k| pluriharmonic_generator(&HoloPoly::new().with(j, k, Coeff::one()));
        assert_eq!(g(1, 0), Poly::x());
        assert_eq!(g(0, 1), Poly::t());
        assert_eq!(g(2, 0), &sq(&Poly::x()) - &sq(&Poly::y()));
    }

    #[test]
    fn pluriharmonic_membership() {
        assert!(is_pluriharmonic(&(&sq(&Poly::x()) - &sq(&Poly::y()))).unwrap());
        assert!(is_pluriharmonic(&Poly::t()).unwrap());
        assert!(is_pluriharmonic(&(&sq(&Poly::x()) + &sq(&Poly::y()))).unwrap());
        assert!(!is_pluriharmonic(&sq(&Poly::t())).unwrap());
        let r2 = &sq(&Poly::x()) + &sq(&Poly::y());
        assert!(!is_pluriharmonic(&sq(&r2)).unwrap());
    }

    #[test]
    fn identity_examples() {
        let c = ConformalChange::new(Poly::x()).unwrap();
        assert!(
            identity_residual(IdentityId::LeeVector, &c)
                .unwrap()
                .is_zero
        );
        let c = ConformalChange::new(&sq(&Poly::x()) - &sq(&Poly::y())).unwrap();
        assert!(
            identity_residual(IdentityId::PaneitzP1Cov, &c)
                .unwrap()
                .is_zero
        );
        let c = ConformalChange::new(Poly::t()).unwrap();
        assert!(
            identity_residual(IdentityId::GaugeBianchi, &c)
                .unwrap()
                .is_zero
        );
        let c = ConformalChange::new(sq(&Poly::t())).unwrap();
        assert!(matches!(
            identity_residual(IdentityId::GaugeBianchi, &c),
            Err(TorsionError::PreconditionViolated(_))
        ));
    }
}
