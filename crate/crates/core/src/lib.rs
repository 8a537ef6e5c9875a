//! Truncated finite-dimensional models of the categorical quantum harmonic
//! oscillator: symmetric Fock spaces over `C^d` with a particle-number
//! cutoff, their comonoid and bialgebra structure, raising and lowering
//! morphisms, coherent states and morphism exponentials, plus an executable
//! law suite that checks every identity of the construction on the sectors
//! where truncation preserves it.

pub mod algebraic;
pub mod combinatorics;
pub mod error;
pub mod fock;
pub mod laws;
pub mod morphism;
pub mod par;
pub mod space;
pub mod symtensor;

pub use error::{Error, Result};
pub use morphism::{Cplx, MatrixJson, Morphism};
pub use space::{SpaceObject, Structure};

/// Default bound on the max-abs deviation for laws claimed to hold exactly.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
