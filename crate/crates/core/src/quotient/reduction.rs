//! Per-degree echelon forms of the quantum ideal.
//!
//! The ideal generated by `ẽ_1..ẽ_n` is homogeneous (with `deg q = 2`), so
//! each graded slice is a finite-dimensional `ℚ`-space. Its row-reduced
//! echelon form, with pivots forced onto non-standard monomials, gives the
//! normal form of every non-standard monomial of that degree as a
//! combination of standard monomials `x^I q^γ`, `I ⊆ δ_n`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::algebra::{Monomial, Polynomial, VarId};
use crate::error::{Error, Result};

/// `x^a q^γ` is standard when `a_k <= n - k` (1-based `k`).
pub fn is_standard(m: &Monomial, n: usize) -> bool {
    m.factors().iter().all(|&(v, e)| match v {
        VarId::X(i) => (e as usize) + (i as usize) <= n,
        _ => true,
    })
}

/// Exponent vectors of length `len` with total `total`, descending lex.
pub(crate) fn compositions(len: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if len == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            rec(len - 1, total - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(len, total, &mut Vec::new(), &mut out);
    out
}

/// All monomials in `x1..xn, q1..q_{n-1}` of graded degree `d`.
pub fn slice_monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for g in 0..=d / 2 {
        let xs = compositions(n, d - 2 * g);
        let qs = compositions(n - 1, g);
        for qe in &qs {
            for xe in &xs {
                let pairs = xe
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| (VarId::X(i as u8 + 1), e))
                    .chain(
                        qe.iter()
                            .enumerate()
                            .map(|(i, &e)| (VarId::Q(i as u8 + 1), e)),
                    );
                out.push(Monomial::from_pairs(pairs));
            }
        }
    }
    out.sort();
    out
}

/// Reduced echelon data for one graded slice of the ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct EchelonSlice {
    pub n: usize,
    pub degree: u32,
    /// Non-standard pivot monomial -> its normal form (standard monomials
    /// only).
    pub reductions: BTreeMap<Monomial, Polynomial>,
}

impl EchelonSlice {
    /// Row-reduces the span of `{m · ẽ_i : deg m + i = degree}`.
    ///
    /// Fails if some row lies entirely in the standard span or if some
    /// non-standard monomial is left without a pivot: either would mean the
    /// standard monomials are not a basis of the quotient.
    pub fn build(n: usize, degree: u32, generators: &[Polynomial]) -> Result<Self> {
        let mut rows: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        // column -> pivots whose row has a nonzero entry there
        let mut occurrences: BTreeMap<Monomial, BTreeSet<Monomial>> = BTreeMap::new();
        for (i, gen) in generators.iter().enumerate() {
            let gdeg = i as u32 + 1;
            if gdeg > degree {
                break;
            }
            for m in slice_monomials(n, degree - gdeg) {
                let mut row = gen.mul_monomial(&m, &One::one());
                let pivots_present: Vec<(Monomial, _)> = row
                    .terms()
                    .filter(|(mono, _)| rows.contains_key(*mono))
                    .map(|(mono, c)| (mono.clone(), c.clone()))
                    .collect();
                for (p, c) in pivots_present {
                    row.add_scaled(&rows[&p], &-c);
                }
                if row.is_zero() {
                    continue;
                }
                let (pivot, pc) = row
                    .terms()
                    .rev()
                    .find(|(mono, _)| !is_standard(mono, n))
                    .map(|(mono, c)| (mono.clone(), c.clone()))
                    .ok_or_else(|| {
                        Error::Internal(format!(
                            "ideal slice of degree {degree} meets the standard span (n = {n})"
                        ))
                    })?;
                let row = row.scale(&pc.recip());
                // clear the new pivot column from earlier rows
                if let Some(holders) = occurrences.remove(&pivot) {
                    for h in holders {
                        let target = rows.get_mut(&h).expect("holder is a row");
                        let c = target.coefficient(&pivot);
                        target.add_scaled(&row, &-c);
                        for (mono, _) in row.terms() {
                            if *mono != h && !rows.contains_key(mono) && *mono != pivot {
                                occurrences
                                    .entry(mono.clone())
                                    .or_default()
                                    .insert(h.clone());
                            }
                        }
                    }
                }
                for (mono, _) in row.terms() {
                    if *mono != pivot {
                        occurrences
                            .entry(mono.clone())
                            .or_default()
                            .insert(pivot.clone());
                    }
                }
                rows.insert(pivot, row);
            }
        }
        let nonstandard = slice_monomials(n, degree)
            .into_iter()
            .filter(|m| !is_standard(m, n))
            .count();
        if nonstandard != rows.len() {
            return Err(Error::Internal(format!(
                "degree {degree} slice: {} pivots for {nonstandard} non-standard monomials (n = {n})",
                rows.len()
            )));
        }
        let reductions = rows
            .into_iter()
            .map(|(pivot, row)| {
                let mut nf = -row;
                nf.add_term(pivot.clone(), One::one());
                (pivot, nf)
            })
            .collect();
        Ok(EchelonSlice {
            n,
            degree,
            reductions,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schubert::ideal_generators;

    #[test]
    fn slice_counts() {
        // degree 2, n = 2: x1^2, x1x2, x2^2, q1
        assert_eq!(slice_monomials(2, 2).len(), 4);
        assert_eq!(compositions(3, 2).len(), 6);
    }

    #[test]
    fn n2_degree2() {
        let slice = EchelonSlice::build(2, 2, &ideal_generators(2)).unwrap();
        let x1 = Monomial::x_power(&[2, 0]);
        // x1^2 ≡ q1
        assert_eq!(slice.reductions[&x1], Polynomial::q(1));
        for nf in slice.reductions.values() {
            assert!(nf.terms().all(|(m, _)| is_standard(m, 2)));
        }
    }
}
