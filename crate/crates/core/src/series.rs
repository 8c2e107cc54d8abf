//! Power series in the `t`-variables, truncated at a total `t`-degree.

use std::fmt;

use crate::algebra::{Polynomial, VarId};

/// A polynomial in `t` (coefficients in `ℚ[q]`) known up to total
/// `t`-degree `order`; every stored term has `t`-degree `<= order`.
///
/// Arithmetic re-truncates at the smaller order of its operands, and a
/// derivative lowers the order by one, so `order` always records the
/// degree through which the series is correct.
#[derive(Clone, Debug, PartialEq)]
pub struct TSeries {
    order: u32,
    poly: Polynomial,
}

impl TSeries {
    pub fn new(poly: Polynomial, order: u32) -> Self {
        TSeries {
            poly: poly.truncate_t(order),
            order,
        }
    }

    pub fn zero(order: u32) -> Self {
        TSeries {
            order,
            poly: Polynomial::zero(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Lowers the order to `order` (no-op if already lower).
    pub fn truncate(&self, order: u32) -> TSeries {
        TSeries::new(self.poly.clone(), order.min(self.order))
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        let order = self.order.min(other.order);
        TSeries::new(&self.poly + &other.poly, order)
    }

    pub fn sub(&self, other: &TSeries) -> TSeries {
        let order = self.order.min(other.order);
        TSeries::new(&self.poly - &other.poly, order)
    }

    pub fn mul(&self, other: &TSeries) -> TSeries {
        let order = self.order.min(other.order);
        TSeries {
            order,
            poly: self.poly.mul_truncated_t(&other.poly, order),
        }
    }

    /// Multiplies by a `t`-free polynomial, e.g. a structure constant.
    pub fn mul_poly(&self, p: &Polynomial) -> TSeries {
        TSeries::new(&self.poly * p, self.order)
    }

    /// `∂/∂v`; for a `t`-variable the result is correct to one degree less.
    pub fn derivative(&self, v: VarId) -> TSeries {
        let order = match v {
            VarId::T(_) => self.order.saturating_sub(1),
            _ => self.order,
        };
        TSeries::new(self.poly.derivative(v), order)
    }

    pub fn at_zero(&self) -> Polynomial {
        self.poly.at_t_zero()
    }

    /// Equality of both series through `t`-degree `d`.
    pub fn agrees_to(&self, other: &TSeries, d: u32) -> bool {
        (&self.poly - &other.poly).truncate_t(d).is_zero()
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.poly, self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn products_retruncate() {
        let id = Permutation::identity(2);
        let s = TSeries::new(&Polynomial::one() + &Polynomial::t(&id), 2);
        let cube = s.mul(&s).mul(&s);
        let t = Polynomial::t(&id);
        let expected = &(&Polynomial::one() + &t.scale(&crate::algebra::rational(3, 1)))
            + &t.pow(2).scale(&crate::algebra::rational(3, 1));
        assert_eq!(cube.poly(), &expected);
        assert_eq!(cube.order(), 2);
    }

    #[test]
    fn derivative_lowers_order() {
        let w = Permutation::longest(2);
        let s = TSeries::new(Polynomial::t(&w).pow(3), 3);
        let d = s.derivative(VarId::t(&w));
        assert_eq!(d.order(), 2);
        assert_eq!(
            d.poly(),
            &Polynomial::t(&w)
                .pow(2)
                .scale(&crate::algebra::rational(3, 1))
        );
        assert!(d.derivative(VarId::t(&w)).derivative(VarId::t(&w)).order() == 0);
        let d = s.derivative(VarId::Q(1));
        assert_eq!(d.order(), 3);
    }

    #[test]
    fn agreement_ignores_high_degree() {
        let w = Permutation::longest(2);
        let a = TSeries::new(&Polynomial::q(1) + &Polynomial::t(&w).pow(2), 4);
        let b = TSeries::new(Polynomial::q(1), 4);
        assert!(a.agrees_to(&b, 1));
        assert!(!a.agrees_to(&b, 2));
    }
}
