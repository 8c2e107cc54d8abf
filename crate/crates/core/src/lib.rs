//! Quantum Schubert polynomials, the quantum cohomology ring of the flag
//! variety, a toy Gromov-Witten potential built from it, and exact checks
//! of the identities relating them.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod lax;
pub mod perm;
pub mod potential;
pub mod quotient;
pub mod report;
pub mod schubert;
pub mod serial;
pub mod series;

pub use error::{Error, Result};
pub use perm::Permutation;
