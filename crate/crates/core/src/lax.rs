//! Gram-Schmidt vectors for the pairing `⟨f, g⟩ = ⟨f g K⟩` and the Lax
//! matrices built from them.
//!
//! The pairing used for orthogonalization is the exact bilinear form
//! `B(f, g) = ⟨f g K_D⟩` of the truncated kernel, so orthogonality, the
//! Lax equation, the symmetry of `L_w 𝔉` and the commutation of the `L_w`
//! hold exactly. Only the identities that differentiate the pairing itself
//! see the truncation of `K`; those are certified through degree `D - 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{Polynomial, RationalFunction, VarId};
use crate::error::{Error, Result};
use crate::potential::Kernel;
use crate::quotient::{QElem, QuantumRing, QuotientElement};
use crate::report::Check;
use crate::series::TSeries;

pub type RfElement = QElem<RationalFunction>;
pub type RfMatrix = Vec<Vec<RationalFunction>>;

/// Orthogonalized standard monomials `X_1 = 1, X_2, ...` in ascending
/// lexicographic order of their exponents.
#[derive(Clone, Debug)]
pub struct GsBasis<'r> {
    kernel: Kernel<'r>,
    /// `[I][J]`: `⟨x^I x^J K_D⟩`.
    gram: Vec<Vec<Polynomial>>,
    lower_gram: Vec<Vec<Polynomial>>,
    vectors: Vec<RfElement>,
    norms: Vec<RationalFunction>,
}

impl<'r> GsBasis<'r> {
    /// Runs Gram-Schmidt on the standard monomials; fails with
    /// [`Error::ZeroNorm`] if some `⟨X_k, X_k⟩` vanishes identically.
    pub fn new(kernel: Kernel<'r>) -> Result<Self> {
        let ring = kernel.ring();
        let dim = ring.dim();
        let gram: Vec<Vec<Polynomial>> = (0..dim)
            .into_par_iter()
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let xi = QElem::unit(dim, i, Polynomial::one());
                        let xj = QElem::unit(dim, j, Polynomial::one());
                        exact_residue(&kernel, &ring.mul(&xi, &xj))
                    })
                    .collect()
            })
            .collect();
        let lower_gram = match kernel.order() {
            0 => vec![vec![Polynomial::zero(); dim]; dim],
            d => gram
                .iter()
                .map(|row| row.iter().map(|p| p.truncate_t(d - 1)).collect())
                .collect(),
        };
        let mut basis = GsBasis {
            kernel,
            gram,
            lower_gram,
            vectors: Vec::with_capacity(dim),
            norms: Vec::with_capacity(dim),
        };
        for k in 0..dim {
            let e: RfElement = QElem::unit(dim, k, RationalFunction::one());
            let mut x = e.clone();
            for j in 0..k {
                let c = basis.form(&e, &basis.vectors[j]).try_div(&basis.norms[j])?;
                x = x.sub(&basis.vectors[j].scale_by(&c));
            }
            let norm = basis.form(&x, &x);
            if norm.is_zero() {
                return Err(Error::ZeroNorm { index: k });
            }
            basis.vectors.push(x);
            basis.norms.push(norm);
        }
        Ok(basis)
    }

    pub fn kernel(&self) -> &Kernel<'r> {
        &self.kernel
    }

    pub fn ring(&self) -> &'r QuantumRing {
        self.kernel.ring()
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// `X_k` over the standard monomials.
    pub fn vector(&self, k: usize) -> &RfElement {
        &self.vectors[k]
    }

    /// `F_k = ⟨X_k, X_k⟩`.
    pub fn norm(&self, k: usize) -> &RationalFunction {
        &self.norms[k]
    }

    /// Permutation index whose Lehmer code is the exponent of `X_k`.
    pub fn perm_of(&self, k: usize) -> usize {
        let ring = self.ring();
        let w = crate::perm::Permutation::from_lehmer_code(&ring.basis()[k])
            .expect("standard exponent");
        ring.perm_index(&w).expect("same n")
    }

    /// `B(f, g) = ⟨f g K_D⟩` over rational-function coefficients.
    pub fn form(&self, f: &RfElement, g: &RfElement) -> RationalFunction {
        form_with(&self.gram, f, g)
    }

    /// `⟨f g K_{D-1}⟩`; each layer of `K` is homogeneous in `t`, so this
    /// is the Gram matrix truncated one degree lower.
    pub fn lower_form(&self, f: &RfElement, g: &RfElement) -> RationalFunction {
        form_with(&self.lower_gram, f, g)
    }

    /// Coordinates of `h` in the basis `(X_k)`; exact because the basis is
    /// unitriangular over the standard monomials.
    pub fn coordinates(&self, h: &RfElement) -> Vec<RationalFunction> {
        let mut rest = h.clone();
        let mut out = vec![RationalFunction::zero(); self.dim()];
        for k in (0..self.dim()).rev() {
            let c = rest.get(k).clone();
            if !c.is_zero() {
                rest = rest.sub(&self.vectors[k].scale_by(&c));
                out[k] = c;
            }
        }
        out
    }

    /// `L_w`: row `a` holds the coordinates of `S̃_w X_a`.
    pub fn multiplication_matrix(&self, w: usize) -> RfMatrix {
        let ring = self.ring();
        let s = ring.schubert_at(w).to_rational();
        (0..self.dim())
            .into_par_iter()
            .map(|a| self.coordinates(&ring.mul(&s, &self.vectors[a])))
            .collect()
    }

    /// `M_w`: row `a` holds the coordinates of `∂X_a/∂t_w`.
    pub fn derivative_matrix(&self, w: usize) -> RfMatrix {
        let v = self.kernel.t_var(w);
        (0..self.dim())
            .into_par_iter()
            .map(|a| self.coordinates(&self.vectors[a].derivative(v)))
            .collect()
    }
}

fn form_with(gram: &[Vec<Polynomial>], f: &RfElement, g: &RfElement) -> RationalFunction {
    let mut out = RationalFunction::zero();
    for (j, gj) in g.nonzero() {
        let mut inner = RationalFunction::zero();
        for (i, fi) in f.nonzero() {
            let m = &gram[i][j];
            if !m.is_zero() {
                inner = &inner + &fi.mul_poly(m);
            }
        }
        if !inner.is_zero() {
            out = &out + &(&inner * gj);
        }
    }
    out
}

fn exact_residue(kernel: &Kernel, g: &QuotientElement) -> Polynomial {
    let mut out = Polynomial::zero();
    for (i, c) in g.nonzero() {
        let m = kernel.moment(i);
        if !m.is_zero() {
            out += &(c * m);
        }
    }
    out
}

/// `⟨f, g⟩ = ⟨f g K⟩` through degree `D`.
pub fn pairing_k(kernel: &Kernel, f: &QuotientElement, g: &QuotientElement) -> TSeries {
    let ring = kernel.ring();
    TSeries::new(exact_residue(kernel, &ring.mul(f, g)), kernel.order())
}

/// `L_w` and `M_w` for every `w`, and `𝔉 = diag(F_k)`.
#[derive(Clone, Debug)]
pub struct LaxMatrices {
    pub l: Vec<RfMatrix>,
    pub m: Vec<RfMatrix>,
    pub norms: Vec<RationalFunction>,
}

pub fn lax_matrices(basis: &GsBasis) -> LaxMatrices {
    let dim = basis.dim();
    let (l, m) = (0..dim)
        .into_par_iter()
        .map(|w| (basis.multiplication_matrix(w), basis.derivative_matrix(w)))
        .unzip();
    LaxMatrices {
        l,
        m,
        norms: basis.norms.clone(),
    }
}

fn mat_mul(a: &RfMatrix, b: &RfMatrix) -> RfMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = RationalFunction::zero();
                    for (k, aik) in a[i].iter().enumerate() {
                        if !aik.is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(aik * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn mat_sub(a: &RfMatrix, b: &RfMatrix) -> RfMatrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

fn mat_derivative(a: &RfMatrix, v: VarId) -> RfMatrix {
    a.iter()
        .map(|row| row.iter().map(|x| x.derivative(v)).collect())
        .collect()
}

fn first_mismatch(a: &RfMatrix, b: &RfMatrix) -> Option<(usize, usize)> {
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                return Some((i, j));
            }
        }
    }
    None
}

/// Number of random `(f, g, w)` triples in the product-rule check.
pub const PRODUCT_RULE_SAMPLES: usize = 20;
const SEED: u64 = 0x5eed_1a55;

fn random_element(ring: &QuantumRing, support: &[usize], rng: &mut ChaCha8Rng) -> QuotientElement {
    let dim = ring.dim();
    let n = ring.n();
    let coeffs = (0..dim)
        .map(|_| {
            let mut c = Polynomial::integer(rng.gen_range(-3..=3));
            if rng.gen_bool(0.5) {
                let w = support[rng.gen_range(0..support.len())];
                c += &Polynomial::t(&ring.perms()[w])
                    .scale(&crate::algebra::rational(rng.gen_range(-2..=2), 1));
            }
            if n > 1 && rng.gen_bool(0.3) {
                c = &c * &Polynomial::q(rng.gen_range(1..n));
            }
            c
        })
        .collect();
    QElem::from_coeffs(coeffs)
}

/// Lax equation, symmetry, norm-derivative identity, product rule,
/// commutation of the `L_w` and orthogonality of the basis.
pub fn lax_checks(basis: &GsBasis, mats: &LaxMatrices) -> Vec<Check> {
    let ring = basis.ring();
    let kernel = basis.kernel();
    let d = kernel.order();
    let dim = basis.dim();
    let names: Vec<String> = ring.perms().iter().map(|w| w.to_string()).collect();
    let support = kernel.support().to_vec();
    let all_pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|u| (0..dim).map(move |w| (u, w)))
        .collect();

    let lax_equation = Check::from_results(
        "lax.lax_equation",
        None,
        all_pairs
            .par_iter()
            .map(|&(u, w)| {
                let lhs = mat_derivative(&mats.l[w], kernel.t_var(u));
                let rhs = mat_sub(
                    &mat_mul(&mats.m[u], &mats.l[w]),
                    &mat_mul(&mats.l[w], &mats.m[u]),
                );
                let bad = first_mismatch(&lhs, &rhs);
                (
                    bad.is_none(),
                    format!("(u, w) = ({}, {}) at {bad:?}", names[u], names[w]),
                )
            })
            .collect::<Vec<_>>(),
    );

    let symmetric = Check::from_results(
        "lax.symmetrizable",
        None,
        (0..dim)
            .into_par_iter()
            .map(|w| {
                let lt: RfMatrix = scale_columns(&mats.l[w], &mats.norms);
                let transposed: RfMatrix = (0..dim)
                    .map(|i| (0..dim).map(|j| lt[j][i].clone()).collect())
                    .collect();
                let bad = first_mismatch(&lt, &transposed);
                (bad.is_none(), format!("w = {} at {bad:?}", names[w]))
            })
            .collect::<Vec<_>>(),
    );

    let norm_derivative = Check::from_results(
        "lax.norm_derivative",
        None,
        support
            .par_iter()
            .map(|&w| {
                let v = kernel.t_var(w);
                let s = ring.schubert_at(w).to_rational();
                let sx: Vec<RfElement> = basis.vectors.iter().map(|x| ring.mul(&s, x)).collect();
                let mt = scale_columns(&mats.m[w], &mats.norms);
                let mut bad = None;
                #[allow(clippy::needless_range_loop)]
                'outer: for i in 0..dim {
                    for j in 0..dim {
                        let lhs =
                            &(&mt[i][j] + &mt[j][i]) + &basis.lower_form(&sx[i], basis.vector(j));
                        let rhs = if i == j {
                            mats.norms[i].derivative(v)
                        } else {
                            RationalFunction::zero()
                        };
                        if lhs != rhs {
                            bad = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                (bad.is_none(), format!("w = {} at {bad:?}", names[w]))
            })
            .collect::<Vec<_>>(),
    )
    .with_note("Lax term paired against K_{D-1}, since dK_D/dt_w = S_w K_{D-1}");

    let product_rule = if d >= 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let samples: Vec<(QuotientElement, QuotientElement, usize)> = (0..PRODUCT_RULE_SAMPLES)
            .map(|_| {
                let f = random_element(ring, &support, &mut rng);
                let g = random_element(ring, &support, &mut rng);
                let w = support[rng.gen_range(0..support.len())];
                (f, g, w)
            })
            .collect();
        Check::from_results(
            "lax.product_rule",
            Some(d - 1),
            samples
                .par_iter()
                .enumerate()
                .map(|(k, (f, g, w))| {
                    let v = kernel.t_var(*w);
                    let pair = |a: &QuotientElement, b: &QuotientElement| {
                        exact_residue(kernel, &ring.mul(a, b))
                    };
                    let lhs = pair(f, g).derivative(v);
                    let sf = ring.mul(ring.schubert_at(*w), f);
                    let rhs =
                        &(&pair(&f.derivative(v), g) + &pair(f, &g.derivative(v))) + &pair(&sf, g);
                    (
                        (&lhs - &rhs).truncate_t(d - 1).is_zero(),
                        format!("sample {k}, w = {}", names[*w]),
                    )
                })
                .collect::<Vec<_>>(),
        )
    } else {
        Check::skipped("lax.product_rule", "needs truncation order 1")
    };

    let commuting_pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|u| (u + 1..dim).map(move |w| (u, w)))
        .collect();
    let commuting = Check::from_results(
        "lax.commuting",
        None,
        commuting_pairs
            .par_iter()
            .map(|&(u, w)| {
                let bad = first_mismatch(
                    &mat_mul(&mats.l[u], &mats.l[w]),
                    &mat_mul(&mats.l[w], &mats.l[u]),
                );
                (
                    bad.is_none(),
                    format!("(u, w) = ({}, {}) at {bad:?}", names[u], names[w]),
                )
            })
            .collect::<Vec<_>>(),
    );

    let off_diagonal: Vec<(usize, usize)> = (0..dim)
        .flat_map(|a| (a + 1..dim).map(move |b| (a, b)))
        .collect();
    let orthogonality = Check::from_results(
        "lax.orthogonality",
        None,
        off_diagonal
            .par_iter()
            .map(|&(a, b)| {
                let v = basis.form(basis.vector(a), basis.vector(b));
                (v.is_zero(), format!("(X_{}, X_{})", a + 1, b + 1))
            })
            .collect::<Vec<_>>(),
    );

    let unitriangular = Check::from_results(
        "lax.unitriangular",
        None,
        (0..dim)
            .map(|k| {
                let x = basis.vector(k);
                let ok = x.get(k) == &RationalFunction::one()
                    && (k + 1..dim).all(|j| x.get(j).is_zero());
                (ok, format!("X_{}", k + 1))
            })
            .collect::<Vec<_>>(),
    );

    vec![
        lax_equation,
        symmetric,
        norm_derivative,
        product_rule,
        commuting,
        orthogonality,
        unitriangular,
    ]
}

fn scale_columns(a: &RfMatrix, diag: &[RationalFunction]) -> RfMatrix {
    a.iter()
        .map(|row| row.iter().zip(diag).map(|(x, f)| x * f).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::build_kernel;
    use crate::report::Status;

    #[test]
    fn n2_basis_and_matrices() {
        let ring = QuantumRing::new(2).unwrap();
        let kernel = build_kernel(&ring, 4, &[0, 1]).unwrap();
        let f = kernel.moment(0).clone();
        let phi = kernel.moment(1).clone();
        let basis = GsBasis::new(kernel).unwrap();
        assert_eq!(basis.norm(0), &RationalFunction::from(f.clone()));
        let ratio = RationalFunction::new(phi.clone(), f.clone()).unwrap();
        let x2 = QElem::from_coeffs(vec![-&ratio, RationalFunction::one()]);
        assert_eq!(basis.vector(1), &x2);
        assert_eq!(basis.perm_of(1), 1);

        let mats = lax_matrices(&basis);
        let q1 = RationalFunction::from(Polynomial::q(1));
        let expected = vec![
            vec![ratio.clone(), RationalFunction::one()],
            vec![&q1 - &(&ratio * &ratio), -&ratio],
        ];
        assert_eq!(mats.l[1], expected);
        let identity = vec![
            vec![RationalFunction::one(), RationalFunction::zero()],
            vec![RationalFunction::zero(), RationalFunction::one()],
        ];
        assert_eq!(mats.l[0], identity);
        for m in &mats.m {
            assert!(m[0].iter().all(RationalFunction::is_zero));
        }

        let checks = lax_checks(&basis, &mats);
        for c in &checks {
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
        let product = checks
            .iter()
            .find(|c| c.name == "lax.product_rule")
            .unwrap();
        assert_eq!(product.items, PRODUCT_RULE_SAMPLES);
    }

    #[test]
    fn pairing_examples() {
        let ring = QuantumRing::new(2).unwrap();
        let kernel = build_kernel(&ring, 3, &[0, 1]).unwrap();
        let one = ring.one::<Polynomial>();
        let x1 = QElem::unit(2, 1, Polynomial::one());
        assert_eq!(&pairing_k(&kernel, &one, &one), kernel.potential());
        assert_eq!(&pairing_k(&kernel, &x1, &one), kernel.phi(1));
    }
}

#[cfg(test)]
mod n3_tests {
    use super::*;
    use crate::potential::build_kernel;

    #[test]
    #[ignore = "slow; run with --ignored"]
    fn n3_lax_checks_pass() {
        let ring = QuantumRing::new(3).unwrap();
        let support: Vec<usize> = (0..ring.dim()).collect();
        let kernel = build_kernel(&ring, 2, &support).unwrap();
        let basis = GsBasis::new(kernel).unwrap();
        let mats = lax_matrices(&basis);
        let checks = lax_checks(&basis, &mats);
        for c in &checks {
            assert!(c.passed(), "{c:?}");
        }
    }
}
