//! Quantum elementary symmetric polynomials, divided differences and the
//! classical, quantum and quantum double Schubert polynomials.

use crate::algebra::{rational, Alphabet, Monomial, Polynomial, Rational, VarId};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Coefficients of `Δ_k(t | X_k)` as a polynomial in `t`: entry `j` is the
/// coefficient of `t^j`, which is `e_{k-j}(X_k | q)`.
///
/// Uses the three-term recurrence of the tridiagonal determinant,
/// `Δ_k = (x_k + t) Δ_{k-1} + q_{k-1} Δ_{k-2}` with `Δ_0 = 1`, `Δ_{-1} = 0`.
pub fn delta_coefficients(k: usize) -> Vec<Polynomial> {
    let mut prev2: Vec<Polynomial> = Vec::new();
    let mut prev1: Vec<Polynomial> = vec![Polynomial::one()];
    for j in 1..=k {
        let xj = Polynomial::x(j);
        let mut next = vec![Polynomial::zero(); j + 1];
        for (d, c) in prev1.iter().enumerate() {
            next[d] += c * &xj;
            next[d + 1] += c;
        }
        if j >= 2 {
            let q = Polynomial::q(j - 1);
            for (d, c) in prev2.iter().enumerate() {
                next[d] += c * &q;
            }
        }
        prev2 = std::mem::replace(&mut prev1, next);
    }
    prev1
}

/// `Δ_k(t | X_k)` with the formal parameter replaced by `t`.
pub fn quantum_e_generating(n: usize, k: usize, t: &Polynomial) -> Result<Polynomial> {
    check_range("k", k, 1, n)?;
    let mut out = Polynomial::zero();
    let mut power = Polynomial::one();
    for c in delta_coefficients(k) {
        out += &c * &power;
        power = &power * t;
    }
    Ok(out)
}

/// `e_i(X_k | q)`, the `t^{k-i}` coefficient of `Δ_k`.
pub fn quantum_elementary(n: usize, i: usize, k: usize) -> Result<Polynomial> {
    check_range("k", k, 0, n)?;
    check_range("i", i, 0, k)?;
    Ok(delta_coefficients(k).swap_remove(k - i))
}

/// The ideal generators `ẽ_i = e_i(X_n | q)`, `i = 1..n`.
pub fn ideal_generators(n: usize) -> Vec<Polynomial> {
    let coeffs = delta_coefficients(n);
    (1..=n).map(|i| coeffs[n - i].clone()).collect()
}

fn check_range(what: &'static str, v: usize, lo: usize, hi: usize) -> Result<()> {
    if v < lo || v > hi {
        return Err(Error::OutOfRange {
            what,
            value: v as i64,
            range: format!("{lo}..={hi}"),
        });
    }
    Ok(())
}

fn alphabet_var(alphabet: Alphabet, i: usize) -> Result<VarId> {
    match alphabet {
        Alphabet::X => Ok(VarId::X(i as u8)),
        Alphabet::Y => Ok(VarId::Y(i as u8)),
        _ => Err(Error::Internal(
            "divided differences act on the x or y alphabet".into(),
        )),
    }
}

/// `∂_i p = (p - s_i p) / (z_i - z_{i+1})` in the chosen alphabet.
///
/// Evaluated termwise: `∂(z_i^a z_{i+1}^b)` is the complete homogeneous sum
/// `Σ z_i^{a-1-k} z_{i+1}^{b+k}` (`a > b`), its negative mirror (`a < b`),
/// or zero.
pub fn divided_difference(
    n: usize,
    i: usize,
    p: &Polynomial,
    alphabet: Alphabet,
) -> Result<Polynomial> {
    check_range("divided difference index", i, 1, n.saturating_sub(1))?;
    let zi = alphabet_var(alphabet, i)?;
    let zj = alphabet_var(alphabet, i + 1)?;
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let (a, b) = (m.exponent(zi), m.exponent(zj));
        if a == b {
            continue;
        }
        let rest = m.with_exponent(zi, 0).with_exponent(zj, 0);
        let (hi, lo, sign) = if a > b {
            (a, b, c.clone())
        } else {
            (b, a, -c.clone())
        };
        for k in 0..hi - lo {
            let (ea, eb) = if a > b {
                (hi - 1 - k, lo + k)
            } else {
                (lo + k, hi - 1 - k)
            };
            let mono = rest.mul(&Monomial::from_pairs([(zi, ea), (zj, eb)]));
            out.add_term(mono, sign.clone());
        }
    }
    Ok(out)
}

/// `∂_{i1} ∘ ... ∘ ∂_{il}` for the word `[i1, ..., il]` (rightmost first).
pub fn divided_difference_word(
    n: usize,
    word: &[usize],
    p: &Polynomial,
    alphabet: Alphabet,
) -> Result<Polynomial> {
    let mut acc = p.clone();
    for &i in word.iter().rev() {
        if acc.is_zero() {
            break;
        }
        acc = divided_difference(n, i, &acc, alphabet)?;
    }
    Ok(acc)
}

/// `∂_w` over the canonical reduced word of `w`.
pub fn divided_difference_perm(
    w: &Permutation,
    p: &Polynomial,
    alphabet: Alphabet,
) -> Result<Polynomial> {
    divided_difference_word(w.size(), &w.reduced_word(), p, alphabet)
}

/// `S̃_{w0}(x, y) = Π_{i=1}^{n-1} Δ_i(y_{n-i} | X_i)`.
pub fn top_double_schubert(n: usize) -> Polynomial {
    let mut acc = Polynomial::one();
    for i in 1..n {
        let delta = quantum_e_generating(n, i, &Polynomial::y(n - i)).expect("1 <= i <= n");
        acc = &acc * &delta;
    }
    acc
}

/// `S̃_w(x, y) = ∂^{(y)}_{w w0} S̃_{w0}(x, y)`.
pub fn quantum_double_schubert(w: &Permutation) -> Result<Polynomial> {
    let n = w.size();
    let u = w.compose(&Permutation::longest(n))?;
    divided_difference_perm(&u, &top_double_schubert(n), Alphabet::Y)
}

/// `S̃_w(x) = S̃_w(x, y)|_{y=0}`.
pub fn quantum_schubert(w: &Permutation) -> Result<Polynomial> {
    Ok(quantum_double_schubert(w)?.set_alphabet_zero(Alphabet::Y))
}

/// `S_w(x) = S̃_w(x)|_{q=0}`.
pub fn classical_schubert(w: &Permutation) -> Result<Polynomial> {
    Ok(quantum_schubert(w)?.set_alphabet_zero(Alphabet::Q))
}

/// `x^{δ_n} = x1^{n-1} x2^{n-2} ... x_{n-1}`.
pub fn staircase_monomial(n: usize) -> Monomial {
    let delta: Vec<u32> = (0..n).map(|k| (n - 1 - k) as u32).collect();
    Monomial::x_power(&delta)
}

/// Classical Schubert polynomial built directly as `∂^{(x)}_{w^{-1} w0}
/// x^{δ_n}`, independent of the quantum construction.
pub fn classical_schubert_from_staircase(w: &Permutation) -> Result<Polynomial> {
    let n = w.size();
    let u = w.inverse().compose(&Permutation::longest(n))?;
    divided_difference_perm(
        &u,
        &Polynomial::monomial(staircase_monomial(n)),
        Alphabet::X,
    )
}

/// Classical, quantum and quantum double Schubert polynomials for all of
/// `S_n`, indexed like [`Permutation::all`].
#[derive(Clone, Debug, PartialEq)]
pub struct SchubertTable {
    n: usize,
    perms: Vec<Permutation>,
    classical: Vec<Polynomial>,
    quantum: Vec<Polynomial>,
    double: Vec<Polynomial>,
}

impl SchubertTable {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange {
                what: "n",
                value: 0,
                range: "1..".into(),
            });
        }
        let perms = Permutation::all(n);
        let top = top_double_schubert(n);
        let w0 = Permutation::longest(n);
        let mut classical = Vec::with_capacity(perms.len());
        let mut quantum = Vec::with_capacity(perms.len());
        let mut double = Vec::with_capacity(perms.len());
        for w in &perms {
            let u = w.compose(&w0)?;
            let d = divided_difference_perm(&u, &top, Alphabet::Y)?;
            let qs = d.set_alphabet_zero(Alphabet::Y);
            classical.push(qs.set_alphabet_zero(Alphabet::Q));
            quantum.push(qs);
            double.push(d);
        }
        Ok(SchubertTable {
            n,
            perms,
            classical,
            quantum,
            double,
        })
    }

    pub(crate) fn from_parts(
        n: usize,
        classical: Vec<Polynomial>,
        quantum: Vec<Polynomial>,
        double: Vec<Polynomial>,
    ) -> Result<Self> {
        let perms = Permutation::all(n);
        if [classical.len(), quantum.len(), double.len()]
            .iter()
            .any(|&l| l != perms.len())
        {
            return Err(Error::Internal("Schubert table of the wrong size".into()));
        }
        Ok(SchubertTable {
            n,
            perms,
            classical,
            quantum,
            double,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn index_of(&self, w: &Permutation) -> Option<usize> {
        self.perms.binary_search(w).ok()
    }

    fn lookup<'a>(&'a self, table: &'a [Polynomial], w: &Permutation) -> Result<&'a Polynomial> {
        self.index_of(w)
            .map(|i| &table[i])
            .ok_or(Error::SizeMismatch {
                left: self.n,
                right: w.size(),
            })
    }

    pub fn classical(&self, w: &Permutation) -> Result<&Polynomial> {
        self.lookup(&self.classical, w)
    }

    pub fn quantum(&self, w: &Permutation) -> Result<&Polynomial> {
        self.lookup(&self.quantum, w)
    }

    pub fn double(&self, w: &Permutation) -> Result<&Polynomial> {
        self.lookup(&self.double, w)
    }

    pub fn quantum_all(&self) -> &[Polynomial] {
        &self.quantum
    }

    pub fn classical_all(&self) -> &[Polynomial] {
        &self.classical
    }

    pub fn double_all(&self) -> &[Polynomial] {
        &self.double
    }
}

/// `Σ_{w ∈ support} t_w · S̃_w(x)`.
pub fn t_linear_form(table: &SchubertTable, support: &[Permutation]) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for w in support {
        out += &Polynomial::t(w) * table.quantum(w)?;
    }
    Ok(out)
}

/// `(1/k!)`.
pub fn inverse_factorial(k: u32) -> Rational {
    let mut f = rational(1, 1);
    for j in 2..=k {
        f /= Rational::from_integer(j.into());
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn x(i: usize) -> Polynomial {
        Polynomial::x(i)
    }

    fn y(i: usize) -> Polynomial {
        Polynomial::y(i)
    }

    fn q(i: usize) -> Polynomial {
        Polynomial::q(i)
    }

    #[test]
    fn delta_small_cases() {
        let t = y(1);
        assert_eq!(quantum_e_generating(3, 1, &t).unwrap(), &x(1) + &t);
        let d2 = &(&(&x(1) + &t) * &(&x(2) + &t)) + &q(1);
        assert_eq!(quantum_e_generating(3, 2, &t).unwrap(), d2);
        let d3 = &(&(&(&x(1) + &t) * &(&x(2) + &t)) * &(&x(3) + &t))
            + &(&(&q(2) * &(&x(1) + &t)) + &(&q(1) * &(&x(3) + &t)));
        assert_eq!(quantum_e_generating(3, 3, &t).unwrap(), d3);
        assert!(quantum_e_generating(3, 4, &t).is_err());
        assert!(quantum_e_generating(3, 0, &t).is_err());
    }

    #[test]
    fn quantum_elementary_n3() {
        let e1 = &(&x(1) + &x(2)) + &x(3);
        let e2 = &(&(&(&x(1) * &x(2)) + &(&x(1) * &x(3))) + &(&x(2) * &x(3))) + &(&q(1) + &q(2));
        let e3 = &(&(&x(1) * &x(2)) * &x(3)) + &(&(&q(2) * &x(1)) + &(&q(1) * &x(3)));
        assert_eq!(quantum_elementary(3, 1, 3).unwrap(), e1);
        assert_eq!(quantum_elementary(3, 2, 3).unwrap(), e2);
        assert_eq!(quantum_elementary(3, 3, 3).unwrap(), e3);
        assert_eq!(quantum_elementary(3, 0, 2).unwrap(), Polynomial::one());
        assert!(quantum_elementary(3, 3, 2).is_err());
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(
            divided_difference(2, 1, &x(1), Alphabet::X).unwrap(),
            Polynomial::one()
        );
        assert!(divided_difference(2, 1, &(&x(1) * &x(2)), Alphabet::X)
            .unwrap()
            .is_zero());
        let f = &(&x(1) + &y(2)) * &(&(&(&x(1) + &y(1)) * &(&x(2) + &y(1))) + &q(1));
        let expected = &(&(&x(1) + &y(1)) * &(&x(1) + &y(2))) - &q(1);
        assert_eq!(divided_difference(3, 1, &f, Alphabet::Y).unwrap(), expected);
        assert!(divided_difference(3, 3, &f, Alphabet::Y).is_err());
    }

    #[test]
    fn double_schubert_examples() {
        assert_eq!(quantum_double_schubert(&p("21")).unwrap(), &x(1) + &y(1));
        assert_eq!(
            quantum_double_schubert(&p("12")).unwrap(),
            Polynomial::one()
        );
        let expected = &(&(&x(1) + &y(1)) * &(&x(2) + &y(1))) + &q(1);
        assert_eq!(quantum_double_schubert(&p("231")).unwrap(), expected);
    }

    #[test]
    fn quantum_schubert_examples() {
        for n in 2..=4 {
            let s1 = Permutation::simple(n, 1).unwrap();
            assert_eq!(quantum_schubert(&s1).unwrap(), x(1));
        }
        assert_eq!(
            quantum_schubert(&p("231")).unwrap(),
            &(&x(1) * &x(2)) + &q(1)
        );
        assert_eq!(quantum_schubert(&p("312")).unwrap(), &x(1).pow(2) - &q(1));
        let top = &(&x(1).pow(2) * &x(2)) + &(&q(1) * &x(1));
        assert_eq!(quantum_schubert(&p("321")).unwrap(), top);
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_schubert(&p("123")).unwrap(), Polynomial::one());
        assert_eq!(classical_schubert(&p("312")).unwrap(), x(1).pow(2));
        assert_eq!(classical_schubert(&p("231")).unwrap(), &x(1) * &x(2));
        for n in 2..=4 {
            let w0 = Permutation::longest(n);
            assert_eq!(
                classical_schubert(&w0).unwrap(),
                Polynomial::monomial(staircase_monomial(n))
            );
        }
    }

    #[test]
    fn table_invariants() {
        for n in 2..=4 {
            let table = SchubertTable::build(n).unwrap();
            for (i, w) in table.perms().iter().enumerate() {
                let qs = &table.quantum_all()[i];
                assert!(!qs.contains_alphabet(Alphabet::Y));
                if w.is_identity() {
                    assert!(qs.is_one());
                } else {
                    assert_eq!(qs.homogeneous_degree(), Some(w.length() as u32), "{w}");
                }
                assert_eq!(
                    table.classical_all()[i],
                    classical_schubert_from_staircase(w).unwrap(),
                    "{w}"
                );
            }
        }
    }
}
