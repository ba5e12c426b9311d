//! Exponentially weighted polynomial jets `Σ_w e^{w·F} p_w`.
//!
//! `F = (F_1, …, F_m)` is a fixed list of real polynomial generators (the
//! conformal exponents in play) and `w` ranges over integer vectors. With one
//! generator `f` this is the familiar `Σ_k e^{k f} p_k`.

use crate::exact::poly::Poly;
use crate::exact::scalar::{Coeff, Q};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Generators together with their flat frame derivatives.
#[derive(PartialEq, Eq)]
pub struct Basis {
    gens: Vec<Poly>,
    z1: Vec<Poly>,
    z1bar: Vec<Poly>,
    dt: Vec<Poly>,
}

impl Basis {
    /// Panics if a generator is not real; callers validate first.
    pub fn new(gens: Vec<Poly>) -> Arc<Self> {
        assert!(
            gens.iter().all(Poly::is_real),
            "jet generators must be real"
        );
        Arc::new(Self {
            z1: gens.iter().map(Poly::z1).collect(),
            z1bar: gens.iter().map(Poly::z1bar).collect(),
            dt: gens.iter().map(Poly::dt).collect(),
            gens,
        })
    }

    pub fn empty() -> Arc<Self> {
        Self::new(Vec::new())
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `w·F` as a polynomial.
    pub fn combine(&self, w: &[i32]) -> Poly {
        let mut out = Poly::zero();
        for (g, &k) in self.gens.iter().zip(w) {
            out.add_assign(&g.scale_int(k as i64));
        }
        out
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.gens).finish()
    }
}

pub type Weight = Vec<i32>;

#[derive(Clone)]
pub struct WeightedJet {
    basis: Arc<Basis>,
    parts: BTreeMap<Weight, Poly>,
}

impl PartialEq for WeightedJet {
    fn eq(&self, o: &Self) -> bool {
        self.check_basis(o);
        self.parts == o.parts
    }
}

impl Eq for WeightedJet {}

impl WeightedJet {
    pub fn zero(basis: &Arc<Basis>) -> Self {
        Self {
            basis: basis.clone(),
            parts: BTreeMap::new(),
        }
    }

    pub fn from_poly(basis: &Arc<Basis>, p: Poly) -> Self {
        Self::weighted(basis, vec![0; basis.len()], p)
    }

    pub fn constant(basis: &Arc<Basis>, c: Coeff) -> Self {
        Self::from_poly(basis, Poly::constant(c))
    }

    pub fn one(basis: &Arc<Basis>) -> Self {
        Self::constant(basis, Coeff::one())
    }

    /// `e^{w·F} p`.
    pub fn weighted(basis: &Arc<Basis>, w: Weight, p: Poly) -> Self {
        assert_eq!(w.len(), basis.len(), "weight length must match the basis");
        let mut parts = BTreeMap::new();
        if !p.is_zero() {
            parts.insert(w, p);
        }
        Self {
            basis: basis.clone(),
            parts,
        }
    }

    /// `e^{w·F}`.
    pub fn exp(basis: &Arc<Basis>, w: Weight) -> Self {
        Self::weighted(basis, w, Poly::one())
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    /// The single conformal exponent when the basis has exactly one generator.
    pub fn background_f(&self) -> Option<&Poly> {
        match self.basis.gens() {
            [f] => Some(f),
            _ => None,
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = (&Weight, &Poly)> {
        self.parts.iter()
    }

    pub fn part(&self, w: &[i32]) -> Poly {
        self.parts.get(w).cloned().unwrap_or_default()
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.parts.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.parts.values().all(Poly::is_real)
    }

    /// Total number of stored monomials.
    pub fn size(&self) -> usize {
        self.parts.values().map(Poly::len).sum()
    }

    fn check_basis(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.basis, &o.basis) || self.basis == o.basis,
            "jets over different generator bases"
        );
    }

    fn add_part(&mut self, w: &Weight, p: &Poly) {
        if p.is_zero() {
            return;
        }
        match self.parts.get_mut(w) {
            Some(v) => {
                v.add_assign(p);
                if v.is_zero() {
                    self.parts.remove(w);
                }
            }
            None => {
                self.parts.insert(w.clone(), p.clone());
            }
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        self.check_basis(o);
        for (w, p) in &o.parts {
            self.add_part(w, p);
        }
    }

    fn map_parts(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = Self::zero(&self.basis);
        for (w, p) in &self.parts {
            out.add_part(w, &f(p));
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        self.map_parts(|p| p.scale(c))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.map_parts(|p| p.scale_int(n))
    }

    pub fn scale_q(&self, s: &Q) -> Self {
        self.map_parts(|p| p.scale_q(s))
    }

    pub fn mul_i(&self) -> Self {
        self.map_parts(Poly::mul_i)
    }

    /// Complex conjugate. Generators are real, so only the polynomials change.
    pub fn conj(&self) -> Self {
        self.map_parts(Poly::conj)
    }

    pub fn real_part(&self) -> Self {
        self.map_parts(Poly::real_part)
    }

    pub fn mul_poly(&self, q: &Poly) -> Self {
        self.map_parts(|p| p * q)
    }

    /// Multiply by `e^{w·F}`.
    pub fn shift(&self, w: &[i32]) -> Self {
        let mut out = Self::zero(&self.basis);
        for (k, p) in &self.parts {
            let k2: Weight = k.iter().zip(w).map(|(a, b)| a + b).collect();
            out.parts.insert(k2, p.clone());
        }
        out
    }

    fn derive(&self, d: impl Fn(&Poly) -> Poly, gens_d: &[Poly]) -> Self {
        let mut out = Self::zero(&self.basis);
        for (w, p) in &self.parts {
            let mut acc = d(p);
            for (k, g) in w.iter().zip(gens_d) {
                if *k != 0 && !g.is_zero() {
                    acc.add_assign(&(g * p).scale_int(*k as i64));
                }
            }
            out.add_part(w, &acc);
        }
        out
    }

    /// Flat `Z₁` derivative.
    pub fn z1(&self) -> Self {
        self.derive(Poly::z1, &self.basis.z1)
    }

    /// Flat `Z₁̄` derivative.
    pub fn z1bar(&self) -> Self {
        self.derive(Poly::z1bar, &self.basis.z1bar)
    }

    /// Flat `T = ∂_t` derivative.
    pub fn dt(&self) -> Self {
        self.derive(Poly::dt, &self.basis.dt)
    }

    /// Value at a rational point: polynomials exactly, exponentials in f64.
    pub fn eval(&self, p: &[Q; 3]) -> Complex64 {
        let gv: Vec<f64> = self
            .basis
            .gens
            .iter()
            .map(|g| g.eval(p).to_complex64().re)
            .collect();
        self.parts
            .iter()
            .map(|(w, poly)| {
                let e: f64 = w.iter().zip(&gv).map(|(k, g)| *k as f64 * g).sum();
                poly.eval(p).to_complex64() * e.exp()
            })
            .sum()
    }
}

impl Add<&WeightedJet> for &WeightedJet {
    type Output = WeightedJet;
    fn add(self, o: &WeightedJet) -> WeightedJet {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }
}

impl Sub<&WeightedJet> for &WeightedJet {
    type Output = WeightedJet;
    fn sub(self, o: &WeightedJet) -> WeightedJet {
        let mut out = self.clone();
        out.add_assign(&-o);
        out
    }
}

impl Neg for &WeightedJet {
    type Output = WeightedJet;
    fn neg(self) -> WeightedJet {
        self.map_parts(|p| -p)
    }
}

impl Mul<&WeightedJet> for &WeightedJet {
    type Output = WeightedJet;
    // Exponentials multiply by adding weights.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: &WeightedJet) -> WeightedJet {
        self.check_basis(o);
        let mut out = WeightedJet::zero(&self.basis);
        for (w1, p1) in &self.parts {
            for (w2, p2) in &o.parts {
                let w: Weight = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                out.add_part(&w, &(p1 * p2));
            }
        }
        out
    }
}

impl fmt::Debug for WeightedJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, p) in &self.parts {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "e^{w:?}·[{p}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leibniz_on_exponential() {
        let f = &Poly::x() * &Poly::t();
        let b = Basis::new(vec![f.clone()]);
        let j = WeightedJet::weighted(&b, vec![2], Poly::y());
        let expected = WeightedJet::weighted(
            &b,
            vec![2],
            &(&f.z1() * &Poly::y()).scale_int(2) + &Poly::y().z1(),
        );
        assert_eq!(j.z1(), expected);
    }

    #[test]
    fn weights_add_under_product() {
        let b = Basis::new(vec![Poly::x(), Poly::t()]);
        let a = WeightedJet::exp(&b, vec![1, -1]);
        let c = WeightedJet::exp(&b, vec![-1, 3]);
        assert_eq!(&a * &c, WeightedJet::exp(&b, vec![0, 2]));
    }

    #[test]
    fn eval_includes_exponential() {
        let b = Basis::new(vec![Poly::x()]);
        let j = WeightedJet::weighted(&b, vec![-2], Poly::from_int(3));
        let p = [
            Q::new(1.into(), 2.into()),
            Q::from_integer(0.into()),
            Q::from_integer(0.into()),
        ];
        assert!((j.eval(&p).re - 3.0 * (-1.0f64).exp()).abs() < 1e-14);
    }
}
