//! Exact scalars in Q(i, √2).
//!
//! The flat Heisenberg frame carries a factor 1/√2, so frame derivatives of
//! rational polynomials leave Q(i). Every scalar is stored as
//! `(re + i·im) + √2·(re2 + i·im2)` with rational components.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

pub type Q = BigRational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Coeff {
    pub re: Q,
    pub im: Q,
    pub re2: Q,
    pub im2: Q,
}

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn mul_q(a: &Q, b: &Q) -> Q {
    if a.is_zero() || b.is_zero() {
        Q::zero()
    } else {
        a * b
    }
}

fn q_to_f64(x: &Q) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.to_f64().unwrap_or_else(|| {
        // Very large numerators: scale down through the integer parts.
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl Coeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self {
            re: q(n),
            ..Self::default()
        }
    }

    pub fn from_q(re: Q) -> Self {
        Self {
            re,
            ..Self::default()
        }
    }

    /// `n/d` as a real rational.
    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_q(Q::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn complex(re: Q, im: Q) -> Self {
        Self {
            re,
            im,
            ..Self::default()
        }
    }

    pub fn i() -> Self {
        Self {
            im: Q::one(),
            ..Self::default()
        }
    }

    pub fn sqrt2() -> Self {
        Self {
            re2: Q::one(),
            ..Self::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.re2.is_zero() && self.im2.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero() && self.im2.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
            re2: self.re2.clone(),
            im2: -&self.im2,
        }
    }

    pub fn real_part(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: Q::zero(),
            re2: self.re2.clone(),
            im2: Q::zero(),
        }
    }

    pub fn imag_part(&self) -> Self {
        Self {
            re: self.im.clone(),
            im: Q::zero(),
            re2: self.im2.clone(),
            im2: Q::zero(),
        }
    }

    pub fn mul_i(&self) -> Self {
        Self {
            re: -&self.im,
            im: self.re.clone(),
            re2: -&self.im2,
            im2: self.re2.clone(),
        }
    }

    pub fn mul_sqrt2(&self) -> Self {
        Self {
            re: &self.re2 * q(2),
            im: &self.im2 * q(2),
            re2: self.re.clone(),
            im2: self.im.clone(),
        }
    }

    pub fn scale_q(&self, s: &Q) -> Self {
        Self {
            re: mul_q(&self.re, s),
            im: mul_q(&self.im, s),
            re2: mul_q(&self.re2, s),
            im2: mul_q(&self.im2, s),
        }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        self.scale_q(&q(n))
    }

    pub fn to_complex64(&self) -> Complex64 {
        let s = std::f64::consts::SQRT_2;
        Complex64::new(
            q_to_f64(&self.re) + s * q_to_f64(&self.re2),
            q_to_f64(&self.im) + s * q_to_f64(&self.im2),
        )
    }

    /// Rough size of the largest component, used only for diagnostics.
    pub fn max_abs_component(&self) -> f64 {
        [&self.re, &self.im, &self.re2, &self.im2]
            .iter()
            .map(|x| q_to_f64(&x.abs()))
            .fold(0.0, f64::max)
    }
}

impl Add<&Coeff> for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        Coeff {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            re2: &self.re2 + &o.re2,
            im2: &self.im2 + &o.im2,
        }
    }
}

impl Sub<&Coeff> for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        Coeff {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
            re2: &self.re2 - &o.re2,
            im2: &self.im2 - &o.im2,
        }
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, o: &Coeff) {
        if !o.re.is_zero() {
            self.re += &o.re;
        }
        if !o.im.is_zero() {
            self.im += &o.im;
        }
        if !o.re2.is_zero() {
            self.re2 += &o.re2;
        }
        if !o.im2.is_zero() {
            self.im2 += &o.im2;
        }
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, o: &Coeff) {
        if !o.re.is_zero() {
            self.re -= &o.re;
        }
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
        if !o.re2.is_zero() {
            self.re2 -= &o.re2;
        }
        if !o.im2.is_zero() {
            self.im2 -= &o.im2;
        }
    }
}

impl Mul<&Coeff> for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        // (a + √2 b)(c + √2 d) = ac + 2bd + √2(ad + bc) with a..d in Q(i).
        let cm = |ar: &Q, ai: &Q, br: &Q, bi: &Q| -> (Q, Q) {
            (mul_q(ar, br) - mul_q(ai, bi), mul_q(ar, bi) + mul_q(ai, br))
        };
        let (acr, aci) = cm(&self.re, &self.im, &o.re, &o.im);
        let (bdr, bdi) = cm(&self.re2, &self.im2, &o.re2, &o.im2);
        let (adr, adi) = cm(&self.re, &self.im, &o.re2, &o.im2);
        let (bcr, bci) = cm(&self.re2, &self.im2, &o.re, &o.im);
        let two = q(2);
        Coeff {
            re: acr + mul_q(&bdr, &two),
            im: aci + mul_q(&bdi, &two),
            re2: adr + bcr,
            im2: adi + bci,
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            re: -&self.re,
            im: -&self.im,
            re2: -&self.re2,
            im2: -&self.im2,
        }
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.re.is_zero() {
            parts.push(format!("{}", self.re));
        }
        if !self.im.is_zero() {
            parts.push(format!("{}i", self.im));
        }
        if !self.re2.is_zero() {
            parts.push(format!("{}√2", self.re2));
        }
        if !self.im2.is_zero() {
            parts.push(format!("{}i√2", self.im2));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "({})", parts.join(" + "))
        }
    }
}
