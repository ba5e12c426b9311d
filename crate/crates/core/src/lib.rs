#![allow(clippy::needless_range_loop)]

pub mod conformal;
pub mod error;
pub mod exact;
pub mod flow;
pub mod frame;
pub mod heisenberg;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod random;
pub mod variation;

pub use error::{Result, TorsionError};
