//! Exact arithmetic: scalars in Q(i, √2) and polynomials in (x, y, t).

pub mod poly;
pub mod scalar;

pub use poly::{Mono, Poly};
pub use scalar::{Coeff, Q};
