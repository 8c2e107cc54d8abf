use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::element::{Coeff, QElem, QuotientElement};
use super::reduction::{is_standard, EchelonSlice};
use crate::algebra::{linalg, Monomial, Polynomial, Rational, VarId};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::schubert::{ideal_generators, SchubertTable};
use crate::serial;

/// All `I` with `0 <= i_k <= n - k`, ascending lexicographically.
pub fn monomial_basis(n: usize) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for k in 0..n {
        let bound = (n - 1 - k) as u32;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=bound).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

/// Classical Schubert block of one x-degree, used to expand top-down.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct DegreeBlock {
    pub perms: Vec<usize>,
    pub basis: Vec<usize>,
    /// `a = v · inverse`, with `v` indexed like `basis` and `a` like `perms`.
    pub inverse: Vec<Vec<Rational>>,
}

/// Echelon slices up to the border degree, multiplication tables and the
/// change of basis to quantum Schubert polynomials, all for one `n`.
#[derive(Clone, Debug)]
pub struct ReductionCache {
    pub(crate) slices: Vec<EchelonSlice>,
    pub(crate) border_nf: HashMap<Vec<u32>, QuotientElement>,
    /// `[i-1][J]`: normal form of `x_i · x^J`.
    pub(crate) mul_x: Vec<Vec<QuotientElement>>,
    /// `[I][J]`: normal form of `x^I · x^J`.
    pub(crate) products: Vec<Vec<QuotientElement>>,
    /// `[w][I]`: coefficient of `x^I` in `S̃_w`.
    pub(crate) change_of_basis: Vec<Vec<Polynomial>>,
    pub(crate) blocks: Vec<DegreeBlock>,
}

/// The ring `ℚ[x, q] / Ĩ_n` together with its quantum Schubert basis.
#[derive(Clone, Debug)]
pub struct QuantumRing {
    n: usize,
    perms: Vec<Permutation>,
    basis: Vec<Vec<u32>>,
    basis_index: HashMap<Vec<u32>, usize>,
    table: SchubertTable,
    schubert: Vec<QuotientElement>,
    cache: ReductionCache,
    w0: usize,
    top: usize,
}

impl QuantumRing {
    pub fn new(n: usize) -> Result<Self> {
        QuantumRing::with_cache_dir(n, None)
    }

    /// Builds the ring, loading persisted echelon slices and the change of
    /// basis from `cache_dir` when present and valid, and writing them
    /// otherwise.
    pub fn with_cache_dir(n: usize, cache_dir: Option<&Path>) -> Result<Self> {
        if !(1..=6).contains(&n) {
            return Err(Error::OutOfRange {
                what: "n",
                value: n as i64,
                range: "1..=6".into(),
            });
        }
        let table = match cache_dir {
            Some(dir) => serial::load_or_build_schubert_table(dir, n)?,
            None => SchubertTable::build(n)?,
        };
        let perms = table.perms().to_vec();
        let basis = monomial_basis(n);
        let basis_index: HashMap<Vec<u32>, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, b)| (b, i))
            .collect();
        let border = (n * (n - 1) / 2 + 1) as u32;
        let gens = ideal_generators(n);
        let slices: Vec<EchelonSlice> = (0..=border)
            .into_par_iter()
            .map(|d| match cache_dir {
                Some(dir) => serial::load_or_build_slice(dir, n, d, &gens),
                None => EchelonSlice::build(n, d, &gens),
            })
            .collect::<Result<_>>()?;

        let dim = basis.len();
        let to_elem = |p: &Polynomial| -> Result<QuotientElement> {
            let mut e = QElem::zero(dim);
            for (a, c) in p.split_by_x(n) {
                let idx = *basis_index
                    .get(&a)
                    .ok_or_else(|| Error::Internal(format!("{a:?} is not a standard exponent")))?;
                e.set(idx, c);
            }
            Ok(e)
        };

        let mut border_nf = HashMap::new();
        for slice in &slices {
            for (m, nf) in &slice.reductions {
                if m.factors().iter().all(|(v, _)| matches!(v, VarId::X(_))) {
                    border_nf.insert(m.x_exponents(n), to_elem(nf)?);
                }
            }
        }

        let cache = ReductionCache {
            slices,
            border_nf,
            mul_x: Vec::new(),
            products: Vec::new(),
            change_of_basis: Vec::new(),
            blocks: Vec::new(),
        };
        let mut ring = QuantumRing {
            n,
            w0: perms.len() - 1,
            top: basis_index[&(0..n).map(|k| (n - 1 - k) as u32).collect::<Vec<_>>()],
            perms,
            basis,
            basis_index,
            table,
            schubert: Vec::new(),
            cache,
        };

        ring.cache.mul_x = (1..=n)
            .map(|i| {
                ring.basis
                    .iter()
                    .map(|j| {
                        let mut a = j.clone();
                        a[i - 1] += 1;
                        ring.nf_border(&a)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;

        ring.cache.products = ring
            .basis
            .par_iter()
            .map(|a| {
                ring.basis
                    .iter()
                    .map(|b| {
                        let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        ring.nf_x(&s)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;

        let schubert: Vec<QuotientElement> = ring
            .table
            .quantum_all()
            .iter()
            .map(|p| ring.normal_form(p))
            .collect::<Result<_>>()?;
        for (w, (elem, poly)) in ring
            .perms
            .iter()
            .zip(schubert.iter().zip(ring.table.quantum_all()))
        {
            if ring.to_polynomial(elem) != *poly {
                return Err(Error::Internal(format!(
                    "quantum Schubert polynomial of {w} leaves the standard span"
                )));
            }
        }

        ring.cache.change_of_basis = match cache_dir {
            Some(dir) => {
                serial::load_or_build_change_of_basis(dir, n, || Ok(change_of_basis(&schubert)))?
            }
            None => change_of_basis(&schubert),
        };
        ring.cache.blocks = degree_blocks(&ring.perms, &ring.basis, &ring.cache.change_of_basis)?;
        ring.schubert = schubert;
        Ok(ring)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `S_n` in lexicographic order; element indices follow this order.
    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn perm_index(&self, w: &Permutation) -> Result<usize> {
        self.perms
            .binary_search(w)
            .map_err(|_| Error::SizeMismatch {
                left: self.n,
                right: w.size(),
            })
    }

    pub fn longest(&self) -> &Permutation {
        &self.perms[self.w0]
    }

    pub fn longest_index(&self) -> usize {
        self.w0
    }

    /// Index of `w0 ∘ w` for the permutation at `index`.
    pub fn dual_index(&self, index: usize) -> usize {
        let w = self
            .longest()
            .compose(&self.perms[index])
            .expect("same size");
        self.perm_index(&w).expect("w0 w lies in S_n")
    }

    /// Standard exponents `I ⊆ δ_n`, ascending lexicographically.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn basis_index(&self, exponents: &[u32]) -> Option<usize> {
        self.basis_index.get(exponents).copied()
    }

    pub fn schubert_table(&self) -> &SchubertTable {
        &self.table
    }

    pub fn cache(&self) -> &ReductionCache {
        &self.cache
    }

    /// `S̃_w` as an element of the quotient.
    pub fn schubert(&self, w: &Permutation) -> Result<&QuotientElement> {
        Ok(&self.schubert[self.perm_index(w)?])
    }

    pub fn schubert_at(&self, index: usize) -> &QuotientElement {
        &self.schubert[index]
    }

    /// `Σ_I c_I x^I` as a polynomial.
    pub fn to_polynomial(&self, e: &QuotientElement) -> Polynomial {
        let mut out = Polynomial::zero();
        for (i, c) in e.nonzero() {
            out += &c.mul_monomial(&Monomial::x_power(&self.basis[i]), &Rational::one());
        }
        out
    }

    pub fn one<C: Coeff>(&self) -> QElem<C> {
        QElem::unit(self.dim(), 0, C::from_poly(Polynomial::one()))
    }

    fn nf_border(&self, a: &[u32]) -> Result<QuotientElement> {
        if let Some(&i) = self.basis_index.get(a) {
            return Ok(QElem::unit(self.dim(), i, Polynomial::one()));
        }
        self.cache
            .border_nf
            .get(a)
            .cloned()
            .ok_or_else(|| Error::Internal(format!("no border reduction for x^{a:?}")))
    }

    /// Normal form of the pure `x`-monomial `x^a`.
    pub fn nf_x(&self, a: &[u32]) -> Result<QuotientElement> {
        let degree: u32 = a.iter().sum();
        if (degree as usize) < self.cache.slices.len() {
            return self.nf_border(a);
        }
        let i = a.iter().position(|&e| e > 0).expect("positive degree");
        let mut rest = a.to_vec();
        rest[i] -= 1;
        let h = self.nf_x(&rest)?;
        let mut out = QElem::zero(self.dim());
        for (j, c) in h.nonzero() {
            out.add_assign_scaled(&self.cache.mul_x[i][j], c);
        }
        Ok(out)
    }

    /// The unique `g ∈ H_n[q]` with `f - g ∈ Ĩ_n`. Coefficients may carry
    /// `t` and `y` content, which the reduction treats as scalars.
    pub fn normal_form(&self, f: &Polynomial) -> Result<QuotientElement> {
        let mut out = QElem::zero(self.dim());
        for (a, c) in f.split_by_x(self.n) {
            if let Some(&i) = self.basis_index.get(&a) {
                let sum = out.get(i) + &c;
                out.set(i, sum);
            } else {
                out.add_assign_scaled(&self.nf_x(&a)?, &c);
            }
        }
        Ok(out)
    }

    /// Product in the quotient ring.
    pub fn mul<C: Coeff>(&self, a: &QElem<C>, b: &QElem<C>) -> QElem<C> {
        let mut out = QElem::zero(self.dim());
        for (i, ca) in a.nonzero() {
            for (j, cb) in b.nonzero() {
                out.add_assign_scaled(&self.cache.products[i][j], &ca.mul(cb));
            }
        }
        out
    }

    /// Product with every coefficient truncated at total `t`-degree `d`.
    pub fn mul_truncated(
        &self,
        a: &QuotientElement,
        b: &QuotientElement,
        d: u32,
    ) -> QuotientElement {
        let mut out: QuotientElement = QElem::zero(self.dim());
        for (i, ca) in a.nonzero() {
            for (j, cb) in b.nonzero() {
                let c = ca.mul_truncated_t(cb, d);
                out.add_assign_scaled(&self.cache.products[i][j], &c);
            }
        }
        out.truncate_t(d)
    }

    /// Coefficients `a_w` with `h = Σ a_w S̃_w`, indexed like [`Self::perms`].
    ///
    /// Works top-down by `x`-degree: the top-degree part of `S̃_w` is the
    /// classical `S_w`, so each classical block is solved over `ℚ` and the
    /// full quantum polynomial subtracted before descending.
    pub fn schubert_expand<C: Coeff>(&self, h: &QElem<C>) -> Result<Vec<C>> {
        let mut rest = h.clone();
        let mut out = vec![C::zero(); self.dim()];
        for block in self.cache.blocks.iter().rev() {
            for (pj, &w) in block.perms.iter().enumerate() {
                let mut a = C::zero();
                for (bi, &i) in block.basis.iter().enumerate() {
                    let m = &block.inverse[bi][pj];
                    if !m.is_zero() && !rest.get(i).is_zero() {
                        a = a.add(&rest.get(i).scale(m));
                    }
                }
                out[w] = a;
            }
            for &w in &block.perms {
                if out[w].is_zero() {
                    continue;
                }
                let neg = out[w].scale(&-Rational::one());
                rest.add_assign_scaled(&self.schubert[w], &neg);
            }
        }
        if !rest.is_zero() {
            return Err(Error::Internal(
                "Schubert expansion left a remainder".into(),
            ));
        }
        Ok(out)
    }

    /// `Σ_w a_w S̃_w`.
    pub fn from_schubert<C: Coeff>(&self, coeffs: &[C]) -> QElem<C> {
        let mut out = QElem::zero(self.dim());
        for (w, c) in coeffs.iter().enumerate() {
            out.add_assign_scaled(&self.schubert[w], c);
        }
        out
    }

    /// Grothendieck residue of a reduced element: its `S̃_{w0}` coefficient.
    ///
    /// `S̃_{w0} = x^{δ_n} + (lower x-degree)` and no other `S̃_w` reaches
    /// `x^{δ_n}`, so this is the coefficient of `x^{δ_n}`.
    pub fn residue_elem<C: Coeff>(&self, h: &QElem<C>) -> C {
        h.get(self.top).clone()
    }

    /// `⟨f⟩` for an arbitrary polynomial.
    pub fn residue(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(self.residue_elem(&self.normal_form(f)?))
    }

    /// `⟨f, g⟩_Q = ⟨f g⟩`.
    pub fn pairing(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        let prod = self.mul(&self.normal_form(f)?, &self.normal_form(g)?);
        Ok(self.residue_elem(&prod))
    }

    /// `c̃_{uv}^w(q)` for all `w`, from `S̃_u S̃_v ≡ Σ_w c̃_{uv}^w S̃_w`.
    pub fn structure_constants(&self, u: &Permutation, v: &Permutation) -> Result<Vec<Polynomial>> {
        let prod = self.mul(self.schubert(u)?, self.schubert(v)?);
        self.schubert_expand(&prod)
    }

    /// All structure constants, `[u][v][w]`.
    pub fn structure_table(&self) -> Result<Vec<Vec<Vec<Polynomial>>>> {
        self.perms
            .par_iter()
            .map(|u| {
                self.perms
                    .iter()
                    .map(|v| self.structure_constants(u, v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    }

    /// Gromov-Witten invariant of order 3: the coefficient of
    /// `q^d = q1^{d1} ... q_{n-1}^{d_{n-1}}` in `c̃_{uv}^w`.
    pub fn gw_invariant(
        &self,
        u: &Permutation,
        v: &Permutation,
        w: &Permutation,
        d: &[u32],
    ) -> Result<Rational> {
        let c = self.structure_constants(u, v)?;
        let m = Monomial::from_pairs(
            d.iter()
                .enumerate()
                .map(|(i, &e)| (VarId::Q(i as u8 + 1), e)),
        );
        Ok(c[self.perm_index(w)?].coefficient(&m))
    }

    /// Determinant of the matrix expressing `{S̃_w}` over `{x^{code(w)}}`.
    pub fn change_of_basis_determinant(&self) -> Result<Polynomial> {
        let rows: Vec<Vec<Polynomial>> = self
            .perms
            .iter()
            .enumerate()
            .map(|(wi, _)| {
                self.perms
                    .iter()
                    .map(|v| {
                        let idx = self.basis_index[&v.lehmer_code()];
                        self.cache.change_of_basis[wi][idx].clone()
                    })
                    .collect()
            })
            .collect();
        linalg::det_bareiss(&rows)
    }

    pub fn change_of_basis(&self) -> &[Vec<Polynomial>] {
        &self.cache.change_of_basis
    }

    /// `⟨x^I x^J⟩` for standard `I`, `J`: the Gram matrix of the residue
    /// pairing on the monomial basis.
    pub fn residue_matrix(&self) -> Vec<Vec<Polynomial>> {
        self.cache
            .products
            .iter()
            .map(|row| row.iter().map(|p| self.residue_elem(p).clone()).collect())
            .collect()
    }

    /// Precomputed `⟨S̃_τ · x^I⟩` for every `τ` and standard `I`.
    pub fn residue_functionals(&self) -> Vec<Vec<Polynomial>> {
        (0..self.dim())
            .map(|tau| {
                (0..self.dim())
                    .map(|i| {
                        let xi = QElem::unit(self.dim(), i, Polynomial::one());
                        self.residue_elem(&self.mul(&self.schubert[tau], &xi))
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks that `normal_form` annihilates `m · ẽ_i` for the given
    /// multipliers; returns the offending products.
    pub fn ideal_residuals(&self, multipliers: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let mut bad = Vec::new();
        for g in ideal_generators(self.n) {
            for m in multipliers {
                let p = &g * m;
                if !self.normal_form(&p)?.is_zero() {
                    bad.push(p);
                }
            }
        }
        Ok(bad)
    }

    /// Number of reductions held by each cached slice.
    pub fn slice_sizes(&self) -> BTreeMap<u32, usize> {
        self.cache
            .slices
            .iter()
            .map(|s| (s.degree, s.reductions.len()))
            .collect()
    }

    /// Every standard monomial of degree at most the border is left fixed
    /// and every non-standard one has a reduction.
    pub fn standard_monomials_are_free(&self) -> bool {
        self.cache.slices.iter().all(|s| {
            super::reduction::slice_monomials(self.n, s.degree)
                .iter()
                .all(|m| is_standard(m, self.n) != s.reductions.contains_key(m))
        })
    }
}

fn change_of_basis(schubert: &[QuotientElement]) -> Vec<Vec<Polynomial>> {
    schubert.iter().map(|e| e.coeffs().to_vec()).collect()
}

fn degree_blocks(
    perms: &[Permutation],
    basis: &[Vec<u32>],
    change: &[Vec<Polynomial>],
) -> Result<Vec<DegreeBlock>> {
    let top = perms.iter().map(Permutation::length).max().unwrap_or(0);
    (0..=top)
        .map(|k| {
            let p: Vec<usize> = (0..perms.len())
                .filter(|&w| perms[w].length() == k)
                .collect();
            let b: Vec<usize> = (0..basis.len())
                .filter(|&i| basis[i].iter().sum::<u32>() as usize == k)
                .collect();
            if p.len() != b.len() {
                return Err(Error::Internal(format!("degree {k} block is not square")));
            }
            // classical part: q-free coefficient
            let m: Vec<Vec<Rational>> = p
                .iter()
                .map(|&w| {
                    b.iter()
                        .map(|&i| change[w][i].coefficient(&Monomial::one()))
                        .collect()
                })
                .collect();
            let inverse = linalg::invert_rational(&m)?;
            Ok(DegreeBlock {
                perms: p,
                basis: b,
                inverse,
            })
        })
        .collect()
}
