//! Seeded random polynomials with small rational coefficients.

use crate::exact::{Coeff, Mono, Poly, Q};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `p ∈ [−9, 9] \ {0}` and `q ∈ [1, 9]`.
pub fn rational<R: Rng>(r: &mut R) -> Q {
    let mut p = 0;
    while p == 0 {
        p = r.gen_range(-9i64..=9);
    }
    let q = r.gen_range(1i64..=9);
    Q::new(p.into(), q.into())
}

pub fn monomials(max_degree: u16) -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=max_degree {
        for b in 0..=max_degree - a {
            for c in 0..=max_degree - a - b {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Real polynomial of degree ≤ `max_degree`. Each monomial is present with
/// probability `density`; at least one monomial of top degree is kept so
/// every derivative depth is exercised.
pub fn real_poly<R: Rng>(r: &mut R, max_degree: u16, density: f64) -> Poly {
    let monos = monomials(max_degree);
    let mut p = Poly::zero();
    for m in &monos {
        if r.gen_bool(density) {
            p.add_term(*m, &Coeff::from_q(rational(r)));
        }
    }
    if p.degree().unwrap_or(0) < max_degree as u32 {
        let top: Vec<_> = monos
            .iter()
            .filter(|m| m.iter().sum::<u16>() == max_degree)
            .collect();
        let m = top[r.gen_range(0..top.len())];
        p.add_term(*m, &Coeff::from_q(rational(r)));
    }
    p
}

/// Complex polynomial of degree ≤ `max_degree`.
pub fn complex_poly<R: Rng>(r: &mut R, max_degree: u16, density: f64) -> Poly {
    let re = real_poly(r, max_degree, density);
    let im = real_poly(r, max_degree, density);
    &re + &im.mul_i()
}
