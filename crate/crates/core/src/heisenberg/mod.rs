//! Exact calculus on the Heisenberg group and its conformal rescalings.

pub mod frame;
pub mod jet;
pub mod operators;
pub mod structure;

pub use jet::{Basis, WeightedJet};
pub use structure::{Dir, HeisenbergStructure};
