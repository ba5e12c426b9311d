//! Exact polynomials in the Heisenberg coordinates (x, y, t).

use super::scalar::{Coeff, Q};
use num_complex::Complex64;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponents of `x^a y^b t^c`.
pub type Mono = [u16; 3];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Coeff>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Coeff::from_int(n))
    }

    pub fn monomial(m: Mono, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn x() -> Self {
        Self::monomial([1, 0, 0], Coeff::one())
    }

    pub fn y() -> Self {
        Self::monomial([0, 1, 0], Coeff::one())
    }

    pub fn t() -> Self {
        Self::monomial([0, 0, 1], Coeff::one())
    }

    /// `z = x + iy`.
    pub fn z() -> Self {
        &Self::x() + &Self::y().mul_i()
    }

    /// `z̄ = x − iy`.
    pub fn zbar() -> Self {
        &Self::x() - &Self::y().mul_i()
    }

    /// The CR function `w = t + i(x² + y²)`.
    pub fn w() -> Self {
        let r2 = &(&Self::x() * &Self::x()) + &(&Self::y() * &Self::y());
        &Self::t() + &r2.mul_i()
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Coeff)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Coeff::is_real)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
    }

    pub fn coeff(&self, m: Mono) -> Coeff {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Mono, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(*m, c);
        }
    }

    pub fn sub_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(*m, &-c);
        }
    }

    fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn scale(&self, s: &Coeff) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|c| c * s)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.map_coeffs(|c| c.scale_int(n))
    }

    pub fn scale_q(&self, s: &Q) -> Self {
        self.map_coeffs(|c| c.scale_q(s))
    }

    pub fn mul_i(&self) -> Self {
        self.map_coeffs(Coeff::mul_i)
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(Coeff::conj)
    }

    pub fn real_part(&self) -> Self {
        self.map_coeffs(Coeff::real_part)
    }

    pub fn imag_part(&self) -> Self {
        self.map_coeffs(Coeff::imag_part)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Partial derivative in coordinate `k` (0 = x, 1 = y, 2 = t).
    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m[k] == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[k] -= 1;
            out.add_term(m2, &c.scale_int(m[k] as i64));
        }
        out
    }

    /// `Z₁ = (∂_z + i z̄ ∂_t)/√2`.
    pub fn z1(&self) -> Self {
        self.horizontal(1)
    }

    /// `Z₁̄ = (∂_z̄ − i z ∂_t)/√2`.
    pub fn z1bar(&self) -> Self {
        self.horizontal(-1)
    }

    /// `T = ∂_t`.
    pub fn dt(&self) -> Self {
        self.partial(2)
    }

    // sign = +1 for Z₁, −1 for Z₁̄. Termwise:
    //   √2/4 (∂_x ∓ i∂_y) + √2/2 (±i x + y) ∂_t
    fn horizontal(&self, sign: i64) -> Self {
        let quarter = Coeff::sqrt2().scale_q(&Q::new(1.into(), 4.into()));
        let half = Coeff::sqrt2().scale_q(&Q::new(1.into(), 2.into()));
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let [a, b, e] = *m;
            if a > 0 {
                out.add_term([a - 1, b, e], &(c * &quarter).scale_int(a as i64));
            }
            if b > 0 {
                let v = (c * &quarter).mul_i().scale_int(-sign * b as i64);
                out.add_term([a, b - 1, e], &v);
            }
            if e > 0 {
                let ce = (c * &half).scale_int(e as i64);
                out.add_term([a + 1, b, e - 1], &ce.mul_i().scale_int(sign));
                out.add_term([a, b + 1, e - 1], &ce);
            }
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, p: &[Q; 3]) -> Coeff {
        let mut acc = Coeff::zero();
        let mut cache: [Vec<Q>; 3] = Default::default();
        for (m, c) in &self.terms {
            let mut v = Q::one();
            for k in 0..3 {
                let pw = &mut cache[k];
                while pw.len() <= m[k] as usize {
                    let next = match pw.last() {
                        Some(l) => l * &p[k],
                        None => Q::one(),
                    };
                    pw.push(next);
                }
                v *= &pw[m[k] as usize];
            }
            acc += &c.scale_q(&v);
        }
        acc
    }

    pub fn eval_f64(&self, p: [f64; 3]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let v = p[0].powi(m[0] as i32) * p[1].powi(m[1] as i32) * p[2].powi(m[2] as i32);
                c.to_complex64() * v
            })
            .sum()
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out.sub_assign(o);
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
                out.add_term(m, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coeffs(|c| -c)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (name, e) in ["x", "y", "t"].iter().zip(m) {
                match e {
                    0 => {}
                    1 => write!(f, "·{name}")?,
                    _ => write!(f, "·{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
