use std::fmt::Debug;

use crate::algebra::{Polynomial, Rational, RationalFunction, VarId};

/// Coefficient ring for elements of the free module `H_n[q]`.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_poly(p: Polynomial) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn mul_poly(&self, p: &Polynomial) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn derivative(&self, v: VarId) -> Self;
}

impl Coeff for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn from_poly(p: Polynomial) -> Self {
        p
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_poly(&self, p: &Polynomial) -> Self {
        self * p
    }
    fn scale(&self, c: &Rational) -> Self {
        Polynomial::scale(self, c)
    }
    fn derivative(&self, v: VarId) -> Self {
        Polynomial::derivative(self, v)
    }
}

impl Coeff for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn from_poly(p: Polynomial) -> Self {
        RationalFunction::from(p)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_poly(&self, p: &Polynomial) -> Self {
        RationalFunction::mul_poly(self, p)
    }
    fn scale(&self, c: &Rational) -> Self {
        RationalFunction::scale(self, c)
    }
    fn derivative(&self, v: VarId) -> Self {
        RationalFunction::derivative(self, v)
    }
}

/// An element `Σ_I c_I x^I` of `H_n[q]` (with coefficients possibly
/// carrying `t`-content), stored densely over the standard monomials
/// `I ⊆ δ_n` in ascending lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct QElem<C> {
    coeffs: Vec<C>,
}

/// Element with polynomial coefficients.
pub type QuotientElement = QElem<Polynomial>;

impl<C: Coeff> QElem<C> {
    pub fn zero(dim: usize) -> Self {
        QElem {
            coeffs: vec![C::zero(); dim],
        }
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        QElem { coeffs }
    }

    pub fn unit(dim: usize, index: usize, c: C) -> Self {
        let mut e = QElem::zero(dim);
        e.coeffs[index] = c;
        e
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn get(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn set(&mut self, i: usize, c: C) {
        self.coeffs[i] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// `(index, coefficient)` pairs with nonzero coefficient.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &C)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, C::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, C::sub)
    }

    pub fn add_assign_scaled(&mut self, other: &QElem<Polynomial>, c: &C) {
        if c.is_zero() {
            return;
        }
        for (i, p) in other.nonzero() {
            self.coeffs[i] = self.coeffs[i].add(&c.mul_poly(p));
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        QElem {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        QElem {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiplies every coefficient by the scalar `c`.
    pub fn scale_by(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn derivative(&self, v: VarId) -> Self {
        self.map(|x| x.derivative(v))
    }
}

impl QElem<Polynomial> {
    pub fn truncate_t(&self, d: u32) -> Self {
        self.map(|p| p.truncate_t(d))
    }

    pub fn at_t_zero(&self) -> Self {
        self.map(Polynomial::at_t_zero)
    }

    pub fn to_rational(&self) -> QElem<RationalFunction> {
        QElem {
            coeffs: self
                .coeffs
                .iter()
                .map(|p| RationalFunction::from(p.clone()))
                .collect(),
        }
    }
}
