//! The quotient ring `ℚ[x, q] / Ĩ_n`: normal forms, residue pairing,
//! quantum Schubert expansion and structure constants.

pub mod checks;
mod element;
pub mod reduction;
mod ring;

pub use checks::ring_checks;
pub use element::{Coeff, QElem, QuotientElement};
pub use reduction::{is_standard, EchelonSlice};
pub use ring::{monomial_basis, QuantumRing, ReductionCache};
