use std::cmp::Ordering;
use std::fmt;

use super::var::{Alphabet, VarId};

/// A monomial: variables with positive exponents, sorted by variable.
///
/// Ordered graded-lexicographically: first by graded degree (`t` has weight
/// zero), then lexicographically with `x1 > x2 > ... > q1 > ... > t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(var, exponent)` pairs; repeated
    /// variables are merged and zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut v: Vec<(VarId, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(var, _)| var);
        let mut out: Vec<(VarId, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == var => *le += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    /// `x1^e1 * x2^e2 * ...`
    pub fn x_power(exponents: &[u32]) -> Self {
        Monomial::from_pairs(
            exponents
                .iter()
                .enumerate()
                .map(|(i, &e)| (VarId::X(i as u8 + 1), e)),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(var, _)| var)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn graded_degree(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.weight() * e).sum()
    }

    pub fn t_degree(&self) -> u32 {
        self.alphabet_degree(Alphabet::T)
    }

    pub fn alphabet_degree(&self, a: Alphabet) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| v.alphabet() == a)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn contains_alphabet(&self, a: Alphabet) -> bool {
        self.0.iter().any(|(v, _)| v.alphabet() == a)
    }

    /// Exponent vector of `x1..xn`.
    pub fn x_exponents(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for &(v, e) in &self.0 {
            if let VarId::X(i) = v {
                out[i as usize - 1] = e;
            }
        }
        out
    }

    /// Splits into the `x`-part and everything else.
    pub fn split_x(&self) -> (Monomial, Monomial) {
        let (x, rest): (Vec<_>, Vec<_>) = self
            .0
            .iter()
            .partition(|(v, _)| v.alphabet() == Alphabet::X);
        (Monomial(x), Monomial(rest))
    }

    /// Keeps only the factors whose variable satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(VarId) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(v, _)| keep(v)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::from_pairs(
            self.0.iter().map(|&(v, e)| (v, e - other.exponent(v))),
        ))
    }

    /// Greatest common divisor.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let m = e.min(other.exponent(v));
                    (m > 0).then_some((v, m))
                })
                .collect(),
        )
    }

    /// Replaces the exponent of `v` (a zero exponent removes it).
    pub fn with_exponent(&self, v: VarId, e: u32) -> Monomial {
        let mut pairs: Vec<(VarId, u32)> =
            self.0.iter().copied().filter(|&(w, _)| w != v).collect();
        pairs.push((v, e));
        Monomial::from_pairs(pairs)
    }

    /// Renames variables through `map`; the map must be injective on the
    /// variables present.
    pub fn map_vars(&self, map: impl Fn(VarId) -> VarId) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (map(v), e)))
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match a.0.cmp(&b.0) {
                // `a` carries a greater variable that `b` lacks here.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match a.1.cmp(&b.1) {
                    Ordering::Equal => {}
                    o => return o,
                },
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.graded_degree()
            .cmp(&other.graded_degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_graded_then_lex() {
        let x1 = Monomial::var(VarId::X(1));
        let x2 = Monomial::var(VarId::X(2));
        let q1 = Monomial::var(VarId::Q(1));
        assert!(x1 > x2);
        // q1 has graded degree 2.
        assert!(q1 > x1);
        assert!(x1.mul(&x1) > x1.mul(&x2));
        assert!(x1.mul(&x2) > x2.mul(&x2));
        assert!(x1.mul(&x1) > q1);
        assert!(Monomial::one() < x2);
    }

    #[test]
    fn merge_and_divide() {
        let m = Monomial::from_pairs([(VarId::X(2), 1), (VarId::X(1), 2), (VarId::X(2), 1)]);
        assert_eq!(m.x_exponents(3), vec![2, 2, 0]);
        let d = Monomial::var(VarId::X(1));
        assert_eq!(m.div(&d).unwrap().x_exponents(2), vec![1, 2]);
        assert!(m.div(&Monomial::var(VarId::Q(1))).is_none());
        assert_eq!(m.graded_degree(), 4);
        assert_eq!(m.to_string(), "x1^2*x2^2");
    }
}
