//! Sublaplacian, CR Paneitz operators, Folland–Stein operator and the
//! commutation relations, on flat or rescaled Heisenberg structures.

use super::jet::WeightedJet;
use super::structure::{Dir, HeisenbergStructure};
use crate::exact::{Coeff, Q};

type Jet = WeightedJet;
type S = HeisenbergStructure;

/// `Δ_bφ = φ_{11̄} + φ_{1̄1}`.
pub fn sublaplacian(s: &S, phi: &Jet) -> Jet {
    let p1 = s.deriv(phi, Dir::Z1);
    let p1b = s.deriv(phi, Dir::Z1bar);
    &s.cov(&p1, 1, Dir::Z1bar) + &s.cov(&p1b, -1, Dir::Z1)
}

/// `P₁φ = φ_{1̄11} + iA₁₁φ_{1̄}`.
pub fn paneitz_p1(s: &S, phi: &Jet) -> Jet {
    let p1b = s.deriv(phi, Dir::Z1bar);
    let p1b1 = s.cov(&p1b, -1, Dir::Z1);
    let mut out = s.cov(&p1b1, 0, Dir::Z1);
    if !s.a11().is_zero() {
        out.add_assign(&(s.a11() * &p1b).mul_i());
    }
    out
}

/// `P̄₁̄φ = φ_{11̄1̄} − iA₁̄₁̄φ_1`.
pub fn paneitz_p1bar(s: &S, phi: &Jet) -> Jet {
    let p1 = s.deriv(phi, Dir::Z1);
    let p11b = s.cov(&p1, 1, Dir::Z1bar);
    let mut out = s.cov(&p11b, 0, Dir::Z1bar);
    if !s.a11().is_zero() {
        out.add_assign(&-&(&s.a1b1b() * &p1).mul_i());
    }
    out
}

/// `P₀φ = ½[(P₁φ)_{,1̄} + (P̄₁̄φ)_{,1}]`, normalized so that on the flat
/// model `P₀ = ¼(Δ_b² + T²)`.
pub fn paneitz_p0(s: &S, phi: &Jet) -> Jet {
    let a = s.cov(&paneitz_p1(s, phi), 1, Dir::Z1bar);
    let b = s.cov(&paneitz_p1bar(s, phi), -1, Dir::Z1);
    (&a + &b).scale_q(&Q::new(1.into(), 2.into()))
}

/// `¼[(Δ_b² + T²)φ − 4Re(i(A₁̄₁̄φ_1)_{,1})]`, equal to [`paneitz_p0`].
pub fn paneitz_p0_factorized(s: &S, phi: &Jet) -> Jet {
    let lap = sublaplacian(s, phi);
    let mut out = sublaplacian(s, &lap);
    out.add_assign(&s.deriv(&s.deriv(phi, Dir::T), Dir::T));
    if !s.a11().is_zero() {
        let x = &s.a1b1b() * &s.deriv(phi, Dir::Z1);
        let y = s.cov(&x, -1, Dir::Z1).mul_i();
        // −4Re(y) = −2(y + ȳ)
        out.add_assign(&(&y + &y.conj()).scale_int(-2));
    }
    out.scale_q(&Q::new(1.into(), 4.into()))
}

/// Folland–Stein operator `L_α = Δ_b − iαT`.
pub fn folland_stein(s: &S, alpha: &Q, phi: &Jet) -> Jet {
    let t = s
        .deriv(phi, Dir::T)
        .scale(&Coeff::complex(Q::from_integer(0.into()), -alpha));
    &sublaplacian(s, phi) + &t
}

/// Commutation relations as residuals, each of which vanishes identically:
/// `φ_{11̄} − φ_{1̄1} − iφ_0`, `φ_{01} − φ_{10} − A₁₁φ_{1̄}` and its
/// conjugate `φ_{01̄} − φ_{1̄0} − A₁̄₁̄φ_1`.
pub fn commutation_residuals(s: &S, phi: &Jet) -> [Jet; 3] {
    let p1 = s.deriv(phi, Dir::Z1);
    let p1b = s.deriv(phi, Dir::Z1bar);
    let p0 = s.deriv(phi, Dir::T);
    let r1 = &(&s.cov(&p1, 1, Dir::Z1bar) - &s.cov(&p1b, -1, Dir::Z1)) - &p0.mul_i();
    let r2 = &(&s.cov(&p0, 0, Dir::Z1) - &s.cov(&p1, 1, Dir::T)) - &(s.a11() * &p1b);
    let r3 = &(&s.cov(&p0, 0, Dir::Z1bar) - &s.cov(&p1b, -1, Dir::T)) - &(&s.a1b1b() * &p1);
    [r1, r2, r3]
}

/// Contracted Bianchi identity `W_{,0} − (A₁₁,₁̄₁̄ + A₁̄₁̄,₁₁)`.
pub fn bianchi_w0_residual(s: &S) -> Jet {
    let a = s.a11();
    let ab = s.a1b1b();
    let a_div = s.cov(&s.cov(a, 2, Dir::Z1bar), 1, Dir::Z1bar);
    let ab_div = s.cov(&s.cov(&ab, -2, Dir::Z1), -1, Dir::Z1);
    &s.deriv(s.webster(), Dir::T) - &(&a_div + &ab_div)
}
