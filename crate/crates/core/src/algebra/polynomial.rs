use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::var::{Alphabet, VarId};
use super::Rational;
use crate::perm::Permutation;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Zero coefficients are never stored, so two equal polynomials have
/// identical term maps.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn integer(c: i64) -> Self {
        Polynomial::constant(Rational::from_integer(c.into()))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial::term(m, Rational::one())
    }

    pub fn var(v: VarId) -> Self {
        Polynomial::monomial(Monomial::var(v))
    }

    pub fn x(i: usize) -> Self {
        Polynomial::var(VarId::X(i as u8))
    }

    pub fn y(i: usize) -> Self {
        Polynomial::var(VarId::Y(i as u8))
    }

    pub fn q(i: usize) -> Self {
        Polynomial::var(VarId::Q(i as u8))
    }

    pub fn t(w: &Permutation) -> Self {
        Polynomial::var(VarId::t(w))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant term, or `None` if the polynomial is not constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// `self += other * c`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Maximum total `t`-degree over the terms (0 for the zero polynomial).
    pub fn t_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::t_degree).max().unwrap_or(0)
    }

    /// Minimum total `t`-degree over the terms, `None` for zero.
    pub fn min_t_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::t_degree).min()
    }

    /// Drops every term whose total `t`-degree exceeds `max_degree`.
    pub fn truncate_t(&self, max_degree: u32) -> Polynomial {
        self.filter(|m| m.t_degree() <= max_degree)
    }

    /// `self * other` with every term of `t`-degree above `d` dropped;
    /// only pairs of homogeneous components that survive are multiplied.
    pub fn mul_truncated_t(&self, other: &Polynomial, d: u32) -> Polynomial {
        let (a, b) = (t_buckets(self, d), t_buckets(other, d));
        let mut out = Polynomial::zero();
        for (da, terms_a) in a.iter().enumerate() {
            for terms_b in &b[..=(d as usize - da)] {
                for (ma, ca) in terms_a {
                    for (mb, cb) in terms_b {
                        out.add_term(ma.mul(mb), *ca * *cb);
                    }
                }
            }
        }
        out
    }

    /// The component of total `t`-degree exactly `d`.
    pub fn t_component(&self, d: u32) -> Polynomial {
        self.filter(|m| m.t_degree() == d)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sets every variable of `alphabet` to zero.
    pub fn set_alphabet_zero(&self, alphabet: Alphabet) -> Polynomial {
        self.filter(|m| !m.contains_alphabet(alphabet))
    }

    pub fn contains_alphabet(&self, alphabet: Alphabet) -> bool {
        self.terms.keys().any(|m| m.contains_alphabet(alphabet))
    }

    /// Graded degrees present, ascending.
    pub fn graded_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(Monomial::graded_degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `Some(d)` when every term has graded degree `d` (zero is homogeneous
    /// of every degree and reports `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.graded_degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.graded_degrees().len() <= 1
    }

    pub fn derivative(&self, v: VarId) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                out.add_term(
                    m.with_exponent(v, e - 1),
                    c * Rational::from_integer(e.into()),
                );
            }
        }
        out
    }

    /// Renames variables (e.g. swaps `y_i` and `y_{i+1}`).
    pub fn map_vars(&self, map: impl Fn(VarId) -> VarId) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.map_vars(&map), c.clone());
        }
        out
    }

    /// Substitutes `v := value`.
    pub fn substitute(&self, v: VarId, value: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        let mut powers: Vec<Polynomial> = vec![Polynomial::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = m.with_exponent(v, 0);
            out += &powers[e].mul_monomial(&rest, c);
        }
        out
    }

    /// Groups terms by their `x`-exponent vector; the values collect the
    /// remaining (non-`x`) content.
    pub fn split_by_x(&self, n: usize) -> BTreeMap<Vec<u32>, Polynomial> {
        let mut out: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (x, rest) = m.split_x();
            out.entry(x.x_exponents(n))
                .or_default()
                .add_term(rest, c.clone());
        }
        out
    }

    /// Gcd of all monomials in the support.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |acc, m| acc.gcd(m))
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(Polynomial { terms })
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not
    /// divide `self`.
    ///
    /// Multivariate division against the leading term; for an exact
    /// divisor the leading term of every intermediate remainder is
    /// divisible by the leading term of `divisor`.
    pub fn try_div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (dl_m, dl_c) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if divisor.len() == 1 {
            let inv = dl_c.recip();
            return self.div_monomial(dl_m).map(|p| p.scale(&inv));
        }
        let dl_inv = dl_c.recip();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(dl_m)?;
            let qc = rc * &dl_inv;
            rem.add_scaled(&divisor.mul_monomial(&qm, &Rational::one()), &-qc.clone());
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Evaluates the `t`-variables at zero.
    pub fn at_t_zero(&self) -> Polynomial {
        self.set_alphabet_zero(Alphabet::T)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True when every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut v: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

fn t_buckets(p: &Polynomial, d: u32) -> Vec<Vec<(&Monomial, &Rational)>> {
    let mut out: Vec<Vec<(&Monomial, &Rational)>> = vec![Vec::new(); d as usize + 1];
    for (m, c) in &p.terms {
        let k = m.t_degree();
        if k <= d {
            out[k as usize].push((m, c));
        }
    }
    out
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::monomial(m)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            for (m, c) in lhs.terms {
                self.add_term(m, c);
            }
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl SubAssign for Polynomial {
    fn sub_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (small, large) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Polynomial::zero();
        for (m, c) in &small.terms {
            for (k, v) in &large.terms {
                out.add_term(m.mul(k), c * v);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    /// Terms in descending monomial order, e.g. `x1^2*x2 + x1*q1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
