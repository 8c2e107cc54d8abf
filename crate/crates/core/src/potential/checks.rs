//! Verification of the derivative identities, WDVV, orthogonality of the
//! deformed Schubert polynomials and the initial conditions at `t = 0`.
//!
//! Every check compares exact objects through an explicit `t`-degree: an
//! identity that consumes `k` derivatives of data known through `D` is
//! certified through `D - k`.

use std::sync::OnceLock;

use rayon::prelude::*;

use super::PotentialBundle;
use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::quotient::{QElem, QuotientElement};
use crate::report::Check;
use crate::series::TSeries;

fn agree_elem(a: &QuotientElement, b: &QuotientElement, d: u32) -> bool {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .all(|(x, y)| (x - y).truncate_t(d).is_zero())
}

fn too_low(name: &str, required: u32, available: u32) -> Check {
    Check::skipped(
        name,
        format!("needs truncation order {required}, have {available}"),
    )
}

fn full_support_only(name: &str) -> Check {
    Check::skipped(name, "needs every t_w in the support")
}

/// Triples `u <= w <= τ`.
fn sorted_triples(dim: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for u in 0..dim {
        for w in u..dim {
            for tau in w..dim {
                out.push((u, w, tau));
            }
        }
    }
    out
}

struct Ctx<'a, 'r> {
    b: &'a PotentialBundle<'r>,
    d: u32,
    dim: usize,
    names: Vec<String>,
    /// `[u][v][w]`: `c̃_{uv}^w`.
    consts: Vec<Vec<Vec<Polynomial>>>,
    /// `Λ_{uwτ}` by flat index `(u * dim + w) * dim + τ`, filled on demand.
    lambdas: Vec<OnceLock<TSeries>>,
}

impl<'a, 'r> Ctx<'a, 'r> {
    fn new(b: &'a PotentialBundle<'r>) -> Result<Self> {
        let ring = b.ring();
        let dim = ring.dim();
        let consts = (0..dim)
            .into_par_iter()
            .map(|u| {
                (0..dim)
                    .map(|v| ring.schubert_expand(b.pair_product(u, v)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let lambdas = (0..dim * dim * dim).map(|_| OnceLock::new()).collect();
        Ok(Ctx {
            b,
            d: b.order(),
            dim,
            names: ring.perms().iter().map(|w| w.to_string()).collect(),
            consts,
            lambdas,
        })
    }

    fn lambda(&self, u: usize, w: usize, tau: usize) -> &TSeries {
        self.lambdas[(u * self.dim + w) * self.dim + tau].get_or_init(|| self.b.lambda(u, w, tau))
    }

    fn support(&self) -> &[usize] {
        self.b.kernel().support()
    }

    fn full(&self) -> bool {
        self.b.kernel().has_full_support()
    }

    fn pairs(&self, first: &[usize]) -> Vec<(usize, usize)> {
        first
            .iter()
            .flat_map(|&u| (0..self.dim).map(move |w| (u, w)))
            .collect()
    }

    fn dk_elem(&self, e: &QuotientElement, w: usize) -> QuotientElement {
        e.derivative(self.b.kernel().t_var(w))
    }

    /// `φ_w = ∂F/∂t_w`.
    fn first_derivatives(&self) -> Check {
        let name = "potential.first_derivatives";
        if self.d < 1 {
            return too_low(name, 1, self.d);
        }
        let results = self.support().par_iter().map(|&w| {
            let lhs = self.b.phi(w);
            let rhs = self.b.derivative(&[w]).expect("order checked");
            (
                lhs.agrees_to(&rhs, self.d - 1),
                format!("w = {}", self.names[w]),
            )
        });
        Check::from_results(name, Some(self.d - 1), results.collect::<Vec<_>>())
    }

    /// `⟨S̃_w^t⟩ = φ_w`.
    fn deformed_residue(&self) -> Check {
        let ring = self.b.ring();
        let results = (0..self.dim).into_par_iter().map(|w| {
            let r = ring.residue_elem(self.b.t_schubert(w));
            (
                TSeries::new(r, self.d).agrees_to(self.b.phi(w), self.d),
                format!("w = {}", self.names[w]),
            )
        });
        Check::from_results(
            "potential.deformed_residue",
            Some(self.d),
            results.collect::<Vec<_>>(),
        )
    }

    /// `α_{u,w} = ∂²F/∂t_u∂t_w`.
    fn second_derivatives(&self) -> Check {
        let name = "potential.second_derivatives";
        if self.d < 2 {
            return too_low(name, 2, self.d);
        }
        let s = self.support();
        let pairs: Vec<(usize, usize)> = s
            .iter()
            .flat_map(|&u| s.iter().map(move |&w| (u, w)))
            .collect();
        let results = pairs.par_iter().map(|&(u, w)| {
            let lhs = self.b.alpha(u, w);
            let rhs = self.b.derivative(&[u, w]).expect("order checked");
            (
                lhs.agrees_to(&rhs, self.d - 2),
                format!("(u, w) = ({}, {})", self.names[u], self.names[w]),
            )
        });
        Check::from_results(name, Some(self.d - 2), results.collect::<Vec<_>>())
    }

    /// `∂K/∂t_w = S̃_w^t`.
    fn kernel_derivative(&self) -> Check {
        let name = "potential.kernel_derivative";
        if self.d < 1 {
            return too_low(name, 1, self.d);
        }
        let k = self.b.kernel().elem();
        let results = self.support().par_iter().map(|&w| {
            let lhs = self.dk_elem(k, w);
            (
                agree_elem(&lhs, self.b.t_schubert(w), self.d - 1),
                format!("w = {}", self.names[w]),
            )
        });
        Check::from_results(name, Some(self.d - 1), results.collect::<Vec<_>>())
    }

    /// `∂_u∂_w F = Σ_τ c̃_{w, w0 τ}^{w0 u} ∂_τ F`.
    fn second_derivative_relation(&self) -> Check {
        let name = "potential.second_derivative_relation";
        if !self.full() {
            return full_support_only(name);
        }
        if self.d < 2 {
            return too_low(name, 2, self.d);
        }
        let ring = self.b.ring();
        let firsts: Vec<TSeries> = (0..self.dim)
            .map(|t| self.b.derivative(&[t]).expect("order checked"))
            .collect();
        let pairs = self.pairs(&(0..self.dim).collect::<Vec<_>>());
        let results = pairs.par_iter().map(|&(u, w)| {
            let lhs = self.b.derivative(&[u, w]).expect("order checked");
            let target = ring.dual_index(u);
            let mut rhs = TSeries::zero(self.d - 1);
            for (tau, first) in firsts.iter().enumerate() {
                let c = &self.consts[w][ring.dual_index(tau)][target];
                if !c.is_zero() {
                    rhs = rhs.add(&first.mul_poly(c));
                }
            }
            (
                lhs.agrees_to(&rhs, self.d - 2),
                format!("(u, w) = ({}, {})", self.names[u], self.names[w]),
            )
        });
        Check::from_results(name, Some(self.d - 2), results.collect::<Vec<_>>())
    }

    /// `[S̃_u^t S̃_w^t] = Σ_τ Λ_{uwτ} S̃_{w0 τ}^t`.
    fn circle_product(&self) -> Check {
        let ring = self.b.ring();
        let pairs: Vec<(usize, usize)> = (0..self.dim)
            .flat_map(|u| (u..self.dim).map(move |w| (u, w)))
            .collect();
        // [S̃_u^t S̃_w^t] = [K^2 S̃_u S̃_w]; forming K^2 once keeps the
        // per-pair products free of `t` on one side.
        let k = self.b.kernel().elem();
        let k2 = ring.mul_truncated(k, k, self.d);
        let results = pairs.par_iter().map(|&(u, w)| {
            let lhs = ring.mul(&k2, self.b.pair_product(u, w)).truncate_t(self.d);
            let mut rhs: QuotientElement = QElem::zero(self.dim);
            for tau in 0..self.dim {
                let l = self.lambda(u, w, tau);
                if l.is_zero() {
                    continue;
                }
                let term = self
                    .b
                    .t_schubert(ring.dual_index(tau))
                    .map(|c| TSeries::new(c.clone(), self.d).mul(l).into_poly());
                rhs = rhs.add(&term);
            }
            (
                agree_elem(&lhs, &rhs, self.d),
                format!("(u, w) = ({}, {})", self.names[u], self.names[w]),
            )
        });
        Check::from_results(
            "potential.circle_product",
            Some(self.d),
            results.collect::<Vec<_>>(),
        )
    }

    /// `Λ_{uwτ} = ∂³F/∂t_u∂t_w∂t_τ`.
    fn third_derivatives(&self) -> Check {
        let name = "potential.third_derivatives";
        if self.d < 3 {
            return too_low(name, 3, self.d);
        }
        let triples: Vec<_> = sorted_triples(self.dim)
            .into_iter()
            .filter(|&(u, w, t)| [u, w, t].iter().all(|&i| self.b.kernel().is_supported(i)))
            .collect();
        let results = triples.par_iter().map(|&(u, w, tau)| {
            let lhs = self.lambda(u, w, tau);
            let rhs = self.b.derivative(&[u, w, tau]).expect("order checked");
            (lhs.agrees_to(&rhs, self.d - 3), self.triple_name(u, w, tau))
        });
        Check::from_results(name, Some(self.d - 3), results.collect::<Vec<_>>())
    }

    fn triple_name(&self, u: usize, w: usize, tau: usize) -> String {
        format!(
            "({}, {}, {})",
            self.names[u], self.names[w], self.names[tau]
        )
    }

    /// `Λ_{uwτ} = Σ_α φ_{w0 α} ⟨S̃_u S̃_w S̃_α S̃_τ⟩`.
    fn four_point_expansion(&self) -> Check {
        let ring = self.b.ring();
        let triples = sorted_triples(self.dim);
        // ⟨(S̃_u S̃_w)(S̃_α S̃_τ)⟩ = Σ_β c̃_{uw}^β c̃_{ατ}^{w0 β} by duality.
        let four_point = |u: usize, w: usize, alpha: usize, tau: usize| {
            let mut out = Polynomial::zero();
            for (beta, c) in self.consts[u][w].iter().enumerate() {
                let e = &self.consts[alpha][tau][ring.dual_index(beta)];
                if !c.is_zero() && !e.is_zero() {
                    out += &(c * e);
                }
            }
            out
        };
        let results = triples.par_iter().map(|&(u, w, tau)| {
            let mut rhs = TSeries::zero(self.d);
            for alpha in 0..self.dim {
                let four = four_point(u, w, alpha, tau);
                if !four.is_zero() {
                    rhs = rhs.add(&self.b.phi(ring.dual_index(alpha)).mul_poly(&four));
                }
            }
            (
                self.lambda(u, w, tau).agrees_to(&rhs, self.d),
                self.triple_name(u, w, tau),
            )
        });
        Check::from_results(
            "potential.four_point_expansion",
            Some(self.d),
            results.collect::<Vec<_>>(),
        )
    }

    /// `Λ_{uwτ}(0) = ⟨S̃_u S̃_w S̃_τ⟩`.
    fn three_point_at_zero(&self) -> Check {
        let ring = self.b.ring();
        let triples = sorted_triples(self.dim);
        let results = triples.par_iter().map(|&(u, w, tau)| {
            let lhs = self.b.three_point_to(u, w, tau, 0).at_zero();
            let rhs =
                ring.residue_elem(&ring.mul(self.b.pair_product(u, w), ring.schubert_at(tau)));
            (lhs == rhs, self.triple_name(u, w, tau))
        });
        Check::from_results(
            "potential.three_point_at_zero",
            Some(0),
            results.collect::<Vec<_>>(),
        )
    }

    /// `Λ` is invariant under all six orderings of its indices.
    fn symmetry(&self) -> Check {
        let triples = sorted_triples(self.dim);
        let results = triples.par_iter().map(|&(u, w, t)| {
            let base = self.lambda(u, w, t);
            let ok = [(u, t, w), (w, u, t), (w, t, u), (t, u, w), (t, w, u)]
                .iter()
                .all(|&(a, b2, c)| self.lambda(a, b2, c) == base);
            (ok, self.triple_name(u, w, t))
        });
        Check::from_results(
            "potential.symmetry",
            Some(self.d),
            results.collect::<Vec<_>>(),
        )
    }

    /// Every coefficient of `Λ_{uwτ}(0)` is a non-negative integer.
    fn positivity_at_zero(&self) -> Check {
        let triples = sorted_triples(self.dim);
        let results = triples.par_iter().map(|&(u, w, t)| {
            let v = self.lambda(u, w, t).at_zero();
            (
                v.is_nonnegative_integral(),
                format!("{} = {v}", self.triple_name(u, w, t)),
            )
        });
        Check::from_results(
            "potential.positivity_at_zero",
            Some(0),
            results.collect::<Vec<_>>(),
        )
    }

    /// `∂S̃_w^t/∂t_u = Σ_τ c̃_{uw}^τ S̃_τ^t`.
    fn deformed_derivative_expansion(&self) -> Check {
        let name = "potential.deformed_derivative_expansion";
        if self.d < 1 {
            return too_low(name, 1, self.d);
        }
        let pairs = self.pairs(self.support());
        let results = pairs.par_iter().map(|&(u, w)| {
            let lhs = self.dk_elem(self.b.t_schubert(w), u);
            let mut rhs: QuotientElement = QElem::zero(self.dim);
            for tau in 0..self.dim {
                let c = &self.consts[u][w][tau];
                if !c.is_zero() {
                    rhs = rhs.add(&self.b.t_schubert(tau).scale_by(c));
                }
            }
            (
                agree_elem(&lhs, &rhs, self.d - 1),
                format!("(u, w) = ({}, {})", self.names[u], self.names[w]),
            )
        });
        Check::from_results(name, Some(self.d - 1), results.collect::<Vec<_>>())
    }

    /// `(∂_u∂_w - Σ_τ c̃_{uw}^τ ∂_τ) K = 0`.
    fn kernel_pde(&self) -> Check {
        let name = "potential.kernel_pde";
        if !self.full() {
            return full_support_only(name);
        }
        if self.d < 2 {
            return too_low(name, 2, self.d);
        }
        let k = self.b.kernel().elem();
        let firsts: Vec<QuotientElement> = (0..self.dim).map(|t| self.dk_elem(k, t)).collect();
        let pairs: Vec<(usize, usize)> = (0..self.dim)
            .flat_map(|u| (u..self.dim).map(move |w| (u, w)))
            .collect();
        let results = pairs.par_iter().map(|&(u, w)| {
            let lhs = self.dk_elem(&firsts[w], u);
            let mut rhs: QuotientElement = QElem::zero(self.dim);
            for (tau, first) in firsts.iter().enumerate() {
                let c = &self.consts[u][w][tau];
                if !c.is_zero() {
                    rhs = rhs.add(&first.scale_by(c));
                }
            }
            (
                agree_elem(&lhs, &rhs, self.d - 2),
                format!("(u, w) = ({}, {})", self.names[u], self.names[w]),
            )
        });
        Check::from_results(name, Some(self.d - 2), results.collect::<Vec<_>>())
    }

    /// `∂S̃_w^t/∂t_u = S̃_u ∘ S̃_w^t = [S̃_u S̃_w K]`.
    fn connection_circle(&self) -> Check {
        let name = "potential.connection_circle";
        if self.d < 1 {
            return too_low(name, 1, self.d);
        }
        let ring = self.b.ring();
        let k = self.b.kernel().elem();
        let pairs = self.pairs(self.support());
        let results = pairs.par_iter().map(|&(u, w)| {
            let lhs = self.dk_elem(self.b.t_schubert(w), u);
            let rhs = ring.mul(self.b.pair_product(u, w), k);
            (
                agree_elem(&lhs, &rhs, self.d - 1),
                format!("(u, w) = ({}, {})", self.names[u], self.names[w]),
            )
        });
        Check::from_results(name, Some(self.d - 1), results.collect::<Vec<_>>())
    }

    /// `∇_u S̃_w = S̃_u * S̃_w = Σ_τ Λ_{uwτ} S̃_{w0 τ}`.
    fn connection_star(&self) -> Check {
        let name = "potential.connection_star";
        if self.d < 1 {
            return too_low(name, 1, self.d);
        }
        let ring = self.b.ring();
        let pairs = self.pairs(self.support());
        let results = pairs.par_iter().map(|&(u, w)| {
            let nabla = self.dk_elem(self.b.t_schubert(w), u);
            let ok = match ring.schubert_expand(&nabla) {
                Ok(coeffs) => (0..self.dim).all(|tau| {
                    TSeries::new(coeffs[ring.dual_index(tau)].clone(), self.d - 1)
                        .agrees_to(self.lambda(u, w, tau), self.d - 1)
                }),
                Err(_) => false,
            };
            (
                ok,
                format!("(u, w) = ({}, {})", self.names[u], self.names[w]),
            )
        });
        Check::from_results(name, Some(self.d - 1), results.collect::<Vec<_>>())
    }
}

/// All derivative, product and connection identities for one bundle.
pub fn pde_checks(b: &PotentialBundle) -> Result<Vec<Check>> {
    pde_checks_selected(b, |_| true)
}

type Run<'a, 'r> = fn(&Ctx<'a, 'r>) -> Check;

/// Like [`pde_checks`], but only runs the checks whose names `select`
/// accepts.
pub fn pde_checks_selected(
    b: &PotentialBundle,
    select: impl Fn(&str) -> bool,
) -> Result<Vec<Check>> {
    let suite: [(&str, Run<'_, '_>); 15] = [
        ("potential.first_derivatives", Ctx::first_derivatives),
        ("potential.deformed_residue", Ctx::deformed_residue),
        ("potential.second_derivatives", Ctx::second_derivatives),
        ("potential.kernel_derivative", Ctx::kernel_derivative),
        (
            "potential.second_derivative_relation",
            Ctx::second_derivative_relation,
        ),
        ("potential.circle_product", Ctx::circle_product),
        ("potential.third_derivatives", Ctx::third_derivatives),
        ("potential.four_point_expansion", Ctx::four_point_expansion),
        ("potential.three_point_at_zero", Ctx::three_point_at_zero),
        ("potential.symmetry", Ctx::symmetry),
        ("potential.positivity_at_zero", Ctx::positivity_at_zero),
        (
            "potential.deformed_derivative_expansion",
            Ctx::deformed_derivative_expansion,
        ),
        ("potential.kernel_pde", Ctx::kernel_pde),
        ("potential.connection_circle", Ctx::connection_circle),
        ("potential.connection_star", Ctx::connection_star),
    ];
    let ctx = Ctx::new(b)?;
    Ok(suite
        .iter()
        .filter(|(name, _)| select(name))
        .map(|(_, run)| run(&ctx))
        .collect())
}

/// WDVV for the third derivatives of `F`, through degree `check_degree`,
/// over all quadruples of supported indices (the inner sum runs over all
/// of `S_n`).
pub fn wdvv_check(b: &PotentialBundle, check_degree: u32) -> Result<Check> {
    let d = b.order();
    if d < 3 || check_degree > d - 3 {
        return Err(Error::TruncationTooLow {
            what: format!("WDVV through degree {check_degree}"),
            required: check_degree + 3,
            available: d,
        });
    }
    let ring = b.ring();
    let dim = ring.dim();
    let support = b.kernel().support().to_vec();
    let s = support.len();
    let names: Vec<String> = ring.perms().iter().map(|w| w.to_string()).collect();
    let dual: Vec<usize> = (0..dim).map(|v| ring.dual_index(v)).collect();
    // table[i][j][v] = Λ_{s_i s_j v}
    let table: Vec<Vec<Vec<TSeries>>> = support
        .par_iter()
        .map(|&a| {
            support
                .iter()
                .map(|&c| {
                    (0..dim)
                        .map(|v| b.three_point_to(a, c, v, check_degree))
                        .collect()
                })
                .collect()
        })
        .collect();
    let quads: Vec<[usize; 4]> = (0..s.pow(4))
        .map(|k| [k / (s * s * s), (k / (s * s)) % s, (k / s) % s, k % s])
        .collect();
    let results: Vec<(bool, String)> = quads
        .par_iter()
        .map(|&[i1, i2, i3, i4]| {
            let mut residual = TSeries::zero(check_degree);
            for v in 0..dim {
                residual = residual.add(&table[i1][i2][v].mul(&table[i3][i4][dual[v]]));
                residual = residual.sub(&table[i2][i3][v].mul(&table[i1][i4][dual[v]]));
            }
            let ok = residual.is_zero();
            let desc = if ok {
                String::new()
            } else {
                format!(
                    "({}, {}, {}, {}): residual {}",
                    names[support[i1]],
                    names[support[i2]],
                    names[support[i3]],
                    names[support[i4]],
                    residual.poly()
                )
            };
            (ok, desc)
        })
        .collect();
    Ok(Check::from_results(
        "potential.wdvv",
        Some(check_degree),
        results,
    ))
}

/// `⟨f, g⟩ = ⟨f g K^{-2}⟩` through degree `D`.
pub fn pairing_k2(b: &PotentialBundle, f: &QuotientElement, g: &QuotientElement) -> TSeries {
    let ring = b.ring();
    let d = b.order();
    let inv2 = b.kernel().inverse_power(2);
    let prod = ring.mul_truncated(&ring.mul_truncated(f, g, d), &inv2, d);
    TSeries::new(ring.residue_elem(&prod), d)
}

/// `⟨S̃_u^t, S̃_w^t⟩ = δ_{u, w0 w}` for the `K^{-2}` pairing.
pub fn orthogonality_t_check(b: &PotentialBundle) -> Check {
    let ring = b.ring();
    let d = b.order();
    let dim = ring.dim();
    let inv2 = b.kernel().inverse_power(2);
    let gram = ring.residue_matrix();
    // functionals[u][J] = ⟨S̃_u^t K^{-2} x^J⟩, so each pairing is one dot product.
    let functionals: Vec<Vec<Polynomial>> = (0..dim)
        .into_par_iter()
        .map(|u| {
            let scaled = ring.mul_truncated(b.t_schubert(u), &inv2, d);
            (0..dim)
                .map(|j| {
                    let mut acc = Polynomial::zero();
                    for (i, c) in scaled.nonzero() {
                        if !gram[i][j].is_zero() {
                            acc += &(c * &gram[i][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|u| (0..dim).map(move |w| (u, w)))
        .collect();
    let results: Vec<(bool, String)> = pairs
        .par_iter()
        .map(|&(u, w)| {
            let mut value = Polynomial::zero();
            for (j, c) in b.t_schubert(w).nonzero() {
                value += &functionals[u][j].mul_truncated_t(c, d);
            }
            let expected = if u == ring.dual_index(w) {
                Polynomial::one()
            } else {
                Polynomial::zero()
            };
            (
                value == expected,
                format!("({}, {}) = {value}", ring.perms()[u], ring.perms()[w]),
            )
        })
        .collect();
    Check::from_results("potential.orthogonality_inverse_square", Some(d), results)
}

/// The three normalization, initial and degree conditions on `F`,
/// evaluated at `t = 0`.
pub fn km_conditions_check(b: &PotentialBundle) -> Vec<Check> {
    let ring = b.ring();
    let dim = ring.dim();
    let n = ring.n();
    let w0 = ring.longest_index();
    let l0 = ring.longest().length();
    let at0 = |u: usize, v: usize, w: usize| b.three_point_to(u, v, w, 0).at_zero();

    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|v| (0..dim).map(move |w| (v, w)))
        .collect();
    let normalization = Check::from_results(
        "conditions.normalization",
        Some(0),
        pairs
            .par_iter()
            .map(|&(v, w)| {
                let value = at0(0, v, w);
                let expected = if v == ring.dual_index(w) {
                    Polynomial::one()
                } else {
                    Polynomial::zero()
                };
                (
                    value == expected,
                    format!(
                        "(v, w) = ({}, {}): {value}",
                        ring.perms()[v],
                        ring.perms()[w]
                    ),
                )
            })
            .collect::<Vec<_>>(),
    )
    .with_note("checked at t = 0");

    let initial = Check::from_results(
        "conditions.initial",
        Some(0),
        (1..n)
            .map(|k| {
                let sk = ring
                    .perm_index(&crate::perm::Permutation::simple(n, k).expect("1 <= k < n"))
                    .expect("simple reflection lies in S_n");
                let value = at0(sk, sk, w0);
                (value == Polynomial::q(k), format!("k = {k}: {value}"))
            })
            .collect::<Vec<_>>(),
    )
    .with_note("checked at t = 0");

    let triples: Vec<_> = sorted_triples(dim)
        .into_iter()
        .filter(|&(u, v, w)| {
            let total =
                ring.perms()[u].length() + ring.perms()[v].length() + ring.perms()[w].length();
            total < l0 || (total - l0) % 2 == 1
        })
        .collect();
    let degree = Check::from_results(
        "conditions.degree",
        Some(0),
        triples
            .par_iter()
            .map(|&(u, v, w)| {
                let value = at0(u, v, w);
                (
                    value.is_zero(),
                    format!(
                        "({}, {}, {}): {value}",
                        ring.perms()[u],
                        ring.perms()[v],
                        ring.perms()[w]
                    ),
                )
            })
            .collect::<Vec<_>>(),
    )
    .with_note("checked at t = 0, with the length sum l(u)+l(v)+l(w)");

    vec![normalization, initial, degree]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::QuantumRing;
    use crate::report::{all_passed, Status};

    fn assert_all_pass(checks: &[Check]) {
        for c in checks {
            assert_ne!(c.status, Status::Fail, "{c:?}");
        }
        assert!(all_passed(checks));
    }

    #[test]
    fn n2_suites_pass() {
        let ring = QuantumRing::new(2).unwrap();
        let b = PotentialBundle::build(&ring, 4, &[0, 1]).unwrap();
        assert_all_pass(&pde_checks(&b).unwrap());
        let wdvv = wdvv_check(&b, 1).unwrap();
        assert_eq!(wdvv.items, 16);
        assert_all_pass(&[wdvv]);
        assert_all_pass(&km_conditions_check(&b));
        assert!(matches!(
            wdvv_check(&b, 2),
            Err(Error::TruncationTooLow { .. })
        ));
    }

    #[test]
    fn n2_orthogonality_inverse_square() {
        let ring = QuantumRing::new(2).unwrap();
        let b = PotentialBundle::build(&ring, 2, &[0, 1]).unwrap();
        let c = orthogonality_t_check(&b);
        assert_eq!(c.items, 4);
        assert_all_pass(&[c]);
    }

    #[test]
    fn pde_checks_detect_a_wrong_kernel() {
        // a bundle whose `F` is shifted by a cubic term must fail the
        // comparison with the third derivatives
        let ring = QuantumRing::new(2).unwrap();
        let b = PotentialBundle::build(&ring, 3, &[0, 1]).unwrap();
        let mut bad = b.clone();
        let t = Polynomial::t(&ring.perms()[0]);
        let shifted = bad.kernel.phi[0].add(&TSeries::new(t.pow(3), 3));
        bad.kernel.phi[0] = shifted;
        let checks = pde_checks(&bad).unwrap();
        let third = checks
            .iter()
            .find(|c| c.name == "potential.third_derivatives")
            .unwrap();
        assert_eq!(third.status, Status::Fail);
    }

    #[test]
    fn restricted_support_skips_full_support_checks() {
        let ring = QuantumRing::new(3).unwrap();
        let support: Vec<usize> = (0..6).filter(|&i| ring.perms()[i].length() <= 1).collect();
        let b = PotentialBundle::build(&ring, 3, &support).unwrap();
        let checks = pde_checks(&b).unwrap();
        let skipped: Vec<&str> = checks
            .iter()
            .filter(|c| c.status == Status::Skipped)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(
            skipped,
            [
                "potential.second_derivative_relation",
                "potential.kernel_pde"
            ]
        );
        assert_all_pass(&checks);
        let wdvv = wdvv_check(&b, 0).unwrap();
        assert_eq!(wdvv.items, 81);
        assert_all_pass(&[wdvv]);
    }
}
