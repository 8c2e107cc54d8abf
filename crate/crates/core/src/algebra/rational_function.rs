use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::polynomial::Polynomial;
use super::var::VarId;
use super::Rational;
use crate::error::{Error, Result};

/// A fraction of two polynomials with nonzero denominator.
///
/// No gcd normal form is maintained; equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction { num, den }.simplified())
    }

    pub fn zero() -> Self {
        RationalFunction::from(Polynomial::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from(Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some()
    }

    /// Cancels common monomial content, exact polynomial quotients and the
    /// leading coefficient of the denominator.
    pub fn simplified(mut self) -> Self {
        if self.num.is_zero() {
            return RationalFunction::zero();
        }
        if let Some(q) = self.num.try_div_exact(&self.den) {
            return RationalFunction::from(q);
        }
        let g = self
            .num
            .monomial_content()
            .gcd(&self.den.monomial_content());
        if !g.is_one() {
            self.num = self.num.div_monomial(&g).expect("content divides");
            self.den = self.den.div_monomial(&g).expect("content divides");
        }
        let lead = self
            .den
            .leading_term()
            .map(|(_, c)| c.clone())
            .expect("nonzero");
        if !lead.is_one() {
            let inv = lead.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    pub fn try_div(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_parts(&rhs.den, &rhs.num))
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        RationalFunction::one().try_div(self)
    }

    fn mul_parts(&self, num: &Polynomial, den: &Polynomial) -> RationalFunction {
        // Cancel exact factors crosswise before multiplying out.
        let (a, d) = match self.num.try_div_exact(den) {
            Some(q) => (q, Polynomial::one()),
            None => (self.num.clone(), den.clone()),
        };
        let (c, b) = match num.try_div_exact(&self.den) {
            Some(q) => (q, Polynomial::one()),
            None => (num.clone(), self.den.clone()),
        };
        RationalFunction {
            num: &a * &c,
            den: &b * &d,
        }
        .simplified()
    }

    /// `(num' den - num den') / den^2`.
    pub fn derivative(&self, v: VarId) -> RationalFunction {
        let dn = self.num.derivative(v);
        if self.is_polynomial() {
            let c = self.den.as_constant().expect("constant");
            return RationalFunction::from(dn.scale(&c.recip()));
        }
        let dd = self.den.derivative(v);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        RationalFunction {
            num,
            den: &self.den * &self.den,
        }
        .simplified()
    }

    /// Numerator of `self - other` after cross-multiplication.
    pub fn cross_difference(&self, other: &RationalFunction) -> Polynomial {
        if self.den == other.den {
            return &self.num - &other.num;
        }
        &(&self.num * &other.den) - &(&other.num * &self.den)
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .simplified()
    }

    pub fn mul_poly(&self, p: &Polynomial) -> RationalFunction {
        self.mul_parts(p, &Polynomial::one())
    }

    pub fn truncate_t(&self, d: u32) -> RationalFunction {
        RationalFunction {
            num: self.num.truncate_t(d),
            den: self.den.clone(),
        }
        .simplified()
    }

    fn add_impl(&self, rhs: &RationalFunction, negate: bool) -> RationalFunction {
        let rnum = if negate { -&rhs.num } else { rhs.num.clone() };
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RationalFunction {
                num: rnum,
                den: rhs.den.clone(),
            };
        }
        if self.den == rhs.den {
            return RationalFunction {
                num: &self.num + &rnum,
                den: self.den.clone(),
            }
            .simplified();
        }
        // One denominator a multiple of the other.
        if let Some(k) = rhs.den.try_div_exact(&self.den) {
            return RationalFunction {
                num: &(&self.num * &k) + &rnum,
                den: rhs.den.clone(),
            }
            .simplified();
        }
        if let Some(k) = self.den.try_div_exact(&rhs.den) {
            return RationalFunction {
                num: &self.num + &(&rnum * &k),
                den: self.den.clone(),
            }
            .simplified();
        }
        RationalFunction {
            num: &(&self.num * &rhs.den) + &(&rnum * &self.den),
            den: &self.den * &rhs.den,
        }
        .simplified()
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.cross_difference(other).is_zero()
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, false)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.add_impl(rhs, true)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        self.mul_parts(&rhs.num, &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if let Some(c) = self.den.as_constant() {
            if c.is_negative() {
                return write!(f, "({})/({})", -&self.num, c.abs());
            }
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn tw() -> (Polynomial, VarId) {
        let w = Permutation::simple(2, 1).unwrap();
        (Polynomial::t(&w), VarId::t(&w))
    }

    #[test]
    fn inverse_times_self_is_one() {
        let (t, _) = tw();
        let inv = RationalFunction::new(Polynomial::one(), t.clone()).unwrap();
        let prod = &inv * &RationalFunction::from(t);
        assert_eq!(prod, RationalFunction::one());
    }

    #[test]
    fn derivative_of_reciprocal() {
        let (t, v) = tw();
        let inv = RationalFunction::new(Polynomial::one(), t.clone()).unwrap();
        let expected = RationalFunction::new(-Polynomial::one(), t.pow(2)).unwrap();
        assert_eq!(inv.derivative(v), expected);
    }

    #[test]
    fn cross_multiplied_equality() {
        let (t, _) = tw();
        let a = RationalFunction {
            num: t.pow(2),
            den: t.clone(),
        };
        assert_eq!(a, RationalFunction::from(t));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let one = RationalFunction::one();
        assert!(matches!(
            one.try_div(&RationalFunction::zero()),
            Err(Error::DivisionByZero)
        ));
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
    }

    #[test]
    fn sums_share_denominators() {
        let (t, _) = tw();
        let q = Polynomial::q(1);
        let a = RationalFunction::new(q.clone(), t.clone()).unwrap();
        let b = RationalFunction::new(Polynomial::one(), t.pow(2)).unwrap();
        let s = &a + &b;
        assert_eq!(s.den(), &t.pow(2));
        assert_eq!(s.num(), &(&(&q * &t) + &Polynomial::one()));
        assert_eq!(&s - &b, a);
    }
}
