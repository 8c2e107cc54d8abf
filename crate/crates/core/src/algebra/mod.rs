//! Exact sparse polynomial and rational-function arithmetic.

pub mod linalg;
mod monomial;
mod polynomial;
mod rational_function;
mod var;

pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use rational_function::RationalFunction;
pub use var::{Alphabet, TIndex, VarId};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// `a / b` as a [`Rational`].
pub fn rational(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}
