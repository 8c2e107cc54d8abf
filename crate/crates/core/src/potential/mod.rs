//! The kernel `K(x, t)`, the toy Gromov-Witten potential `F(t)` and the
//! `t`-deformed quantum Schubert polynomials.
//!
//! Index conventions: permutations are referred to by their index in
//! [`QuantumRing::perms`] (lexicographic, so the identity is index 0), and
//! `K = Σ_w φ_w S̃_{w0 w}` with `w0 w` the composite `w0 ∘ w`.

mod checks;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::{rational, Polynomial, VarId};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::quotient::{QElem, QuantumRing, QuotientElement};
use crate::series::TSeries;

pub use checks::{
    km_conditions_check, orthogonality_t_check, pairing_k2, pde_checks, pde_checks_selected,
    wdvv_check,
};

/// Which `t_w` are switched on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportSpec {
    All,
    /// Every `w` with `l(w) <= k`.
    MaxLength(usize),
    List(Vec<Permutation>),
}

impl SupportSpec {
    /// Sorted permutation indices; errors if the result is empty or a
    /// listed permutation has the wrong size.
    pub fn resolve(&self, ring: &QuantumRing) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = match self {
            SupportSpec::All => (0..ring.dim()).collect(),
            SupportSpec::MaxLength(k) => (0..ring.dim())
                .filter(|&i| ring.perms()[i].length() <= *k)
                .collect(),
            SupportSpec::List(ws) => ws
                .iter()
                .map(|w| ring.perm_index(w))
                .collect::<Result<_>>()?,
        };
        out.sort_unstable();
        out.dedup();
        if out.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(out)
    }
}

impl FromStr for SupportSpec {
    type Err = Error;

    /// `all`, `len<=K`, or permutations separated by `;`
    /// (e.g. `1,2,3;2,1,3`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(SupportSpec::All);
        }
        if let Some(k) = s.strip_prefix("len<=") {
            return k
                .trim()
                .parse()
                .map(SupportSpec::MaxLength)
                .map_err(|_| Error::OutOfRange {
                    what: "support length bound",
                    value: -1,
                    range: "a non-negative integer".into(),
                });
        }
        let perms = s
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse())
            .collect::<Result<Vec<Permutation>>>()?;
        if perms.is_empty() {
            return Err(Error::EmptySupport);
        }
        Ok(SupportSpec::List(perms))
    }
}

impl fmt::Display for SupportSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportSpec::All => write!(f, "all"),
            SupportSpec::MaxLength(k) => write!(f, "len<={k}"),
            SupportSpec::List(ws) => {
                let parts: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                write!(f, "{}", parts.join(";"))
            }
        }
    }
}

/// `K = Σ_{k<=D} [T^k] / k!` with `T = Σ_{w ∈ support} t_w S̃_w`.
#[derive(Clone, Debug)]
pub struct Kernel<'r> {
    ring: &'r QuantumRing,
    order: u32,
    support: Vec<usize>,
    /// `P_k = [T^k] / k!`, homogeneous of `t`-degree `k`.
    layers: Vec<QuotientElement>,
    elem: QuotientElement,
    phi: Vec<TSeries>,
    /// `⟨x^I K⟩` for each standard `I`.
    moments: Vec<Polynomial>,
}

/// Builds the kernel through `t`-degree `order`.
///
/// Each layer is computed as `P_k = [P_{k-1} T] / k`; since `P_{k-1}` is
/// `t`-homogeneous, no intermediate truncation is needed and
/// `∂K_D/∂t_w = [S̃_w K_{D-1}]` holds exactly.
pub fn build_kernel<'r>(
    ring: &'r QuantumRing,
    order: u32,
    support: &[usize],
) -> Result<Kernel<'r>> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let dim = ring.dim();
    let mut linear: QuotientElement = QElem::zero(dim);
    for &w in support {
        if w >= dim {
            return Err(Error::OutOfRange {
                what: "support index",
                value: w as i64,
                range: format!("0..{dim}"),
            });
        }
        linear.add_assign_scaled(ring.schubert_at(w), &Polynomial::t(&ring.perms()[w]));
    }
    let mut layers = vec![ring.one::<Polynomial>()];
    for k in 1..=order {
        let next = ring
            .mul(&layers[k as usize - 1], &linear)
            .scale(&rational(1, i64::from(k)));
        layers.push(next);
    }
    let mut elem = QElem::zero(dim);
    for layer in &layers {
        elem = elem.add(layer);
    }
    let coeffs = ring.schubert_expand(&elem)?;
    let phi = (0..dim)
        .map(|w| TSeries::new(coeffs[ring.dual_index(w)].clone(), order))
        .collect();
    let moments = (0..dim)
        .into_par_iter()
        .map(|i| {
            let xi = QElem::unit(dim, i, Polynomial::one());
            ring.residue_elem(&ring.mul(&xi, &elem))
        })
        .collect();
    let mut support = support.to_vec();
    support.sort_unstable();
    support.dedup();
    Ok(Kernel {
        ring,
        order,
        support,
        layers,
        elem,
        phi,
        moments,
    })
}

impl<'r> Kernel<'r> {
    pub fn ring(&self) -> &'r QuantumRing {
        self.ring
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn is_supported(&self, w: usize) -> bool {
        self.support.binary_search(&w).is_ok()
    }

    pub fn has_full_support(&self) -> bool {
        self.support.len() == self.ring.dim()
    }

    /// `t_w` for the permutation at index `w`.
    pub fn t_var(&self, w: usize) -> VarId {
        VarId::t(&self.ring.perms()[w])
    }

    pub fn elem(&self) -> &QuotientElement {
        &self.elem
    }

    pub fn layer(&self, k: u32) -> &QuotientElement {
        &self.layers[k as usize]
    }

    /// `K` through `t`-degree `d <= D`.
    pub fn truncated(&self, d: u32) -> QuotientElement {
        let mut out = QElem::zero(self.ring.dim());
        for layer in self.layers.iter().take(d as usize + 1) {
            out = out.add(layer);
        }
        out
    }

    /// `φ_w`, the coefficient of `S̃_{w0 w}` in `K`.
    pub fn phi(&self, w: usize) -> &TSeries {
        &self.phi[w]
    }

    /// `F = ⟨K⟩ = φ_id`.
    pub fn potential(&self) -> &TSeries {
        &self.phi[0]
    }

    /// `⟨x^I K⟩` for the standard monomial at `index`, exact (not
    /// re-truncated).
    pub fn moment(&self, index: usize) -> &Polynomial {
        &self.moments[index]
    }

    /// `⟨g K⟩` for an element `g` whose coefficients carry no `t`.
    pub fn residue_against(&self, g: &QuotientElement) -> TSeries {
        let mut out = Polynomial::zero();
        for (i, c) in g.nonzero() {
            if !self.moments[i].is_zero() {
                out += &(c * &self.moments[i]);
            }
        }
        TSeries::new(out, self.order)
    }

    /// `K^{-m}` through `t`-degree `D`, by the geometric series in
    /// `1 - K` (whose coefficients have no constant `t`-term).
    pub fn inverse_power(&self, m: u32) -> QuotientElement {
        let ring = self.ring;
        let d = self.order;
        let one = ring.one::<Polynomial>();
        if m == 0 {
            return one;
        }
        let nil = one.sub(&self.elem);
        let mut inverse = one.clone();
        let mut power = one.clone();
        for _ in 1..=d {
            power = ring.mul_truncated(&power, &nil, d);
            if power.is_zero() {
                break;
            }
            inverse = inverse.add(&power);
        }
        let mut out = inverse.clone();
        for _ in 1..m {
            out = ring.mul_truncated(&out, &inverse, d);
        }
        out
    }
}

/// The potential with its derivative data and the `t`-deformed Schubert
/// polynomials.
#[derive(Clone, Debug)]
pub struct PotentialBundle<'r> {
    kernel: Kernel<'r>,
    /// `S̃_w^t = [K S̃_w]`.
    t_schubert: Vec<QuotientElement>,
    /// `[u][w]`: `S̃_u S̃_w` reduced.
    pair_products: Vec<Vec<QuotientElement>>,
    /// `[τ][J]`: `⟨x^J S̃_τ K⟩`.
    deformed_moments: Vec<Vec<Polynomial>>,
}

impl<'r> PotentialBundle<'r> {
    pub fn new(kernel: Kernel<'r>) -> Self {
        let ring = kernel.ring;
        let dim = ring.dim();
        let t_schubert: Vec<QuotientElement> = (0..dim)
            .into_par_iter()
            .map(|w| ring.mul(kernel.elem(), ring.schubert_at(w)))
            .collect();
        let pair_products = (0..dim)
            .into_par_iter()
            .map(|u| {
                (0..dim)
                    .map(|w| ring.mul(ring.schubert_at(u), ring.schubert_at(w)))
                    .collect()
            })
            .collect();
        let deformed_moments = (0..dim)
            .into_par_iter()
            .map(|tau| {
                (0..dim)
                    .map(|j| {
                        let xj = QElem::unit(dim, j, Polynomial::one());
                        let g = ring.mul(&xj, ring.schubert_at(tau));
                        kernel.residue_against(&g).into_poly()
                    })
                    .collect()
            })
            .collect();
        PotentialBundle {
            kernel,
            t_schubert,
            pair_products,
            deformed_moments,
        }
    }

    pub fn build(ring: &'r QuantumRing, order: u32, support: &[usize]) -> Result<Self> {
        Ok(PotentialBundle::new(build_kernel(ring, order, support)?))
    }

    pub fn kernel(&self) -> &Kernel<'r> {
        &self.kernel
    }

    pub fn ring(&self) -> &'r QuantumRing {
        self.kernel.ring
    }

    pub fn order(&self) -> u32 {
        self.kernel.order
    }

    pub fn potential(&self) -> &TSeries {
        self.kernel.potential()
    }

    pub fn phi(&self, w: usize) -> &TSeries {
        self.kernel.phi(w)
    }

    /// `S̃_w^t`.
    pub fn t_schubert(&self, w: usize) -> &QuotientElement {
        &self.t_schubert[w]
    }

    pub fn pair_product(&self, u: usize, w: usize) -> &QuotientElement {
        &self.pair_products[u][w]
    }

    /// `α_{u,w}`, the coefficient of `S̃_{w0 u}` in `S̃_w^t`, computed as
    /// `⟨S̃_u S̃_w^t⟩`.
    pub fn alpha(&self, u: usize, w: usize) -> TSeries {
        self.contract(self.ring().schubert_at(u), w, self.order())
    }

    /// `Λ_{uwτ} = ⟨S̃_u S̃_w S̃_τ K⟩`, the 3-point function read off the
    /// kernel directly; correct through degree `D`.
    pub fn lambda(&self, u: usize, w: usize, tau: usize) -> TSeries {
        self.contract(&self.pair_products[u][w], tau, self.order())
    }

    /// [`Self::lambda`] computed only through degree `d`.
    pub fn lambda_to(&self, u: usize, w: usize, tau: usize, d: u32) -> TSeries {
        self.contract(&self.pair_products[u][w], tau, d.min(self.order()))
    }

    /// `⟨g S̃_τ K⟩` for `t`-free `g`, through degree `d`.
    fn contract(&self, g: &QuotientElement, tau: usize, d: u32) -> TSeries {
        let mut out = Polynomial::zero();
        for (j, c) in g.nonzero() {
            let m = &self.deformed_moments[tau][j];
            if m.is_zero() {
                continue;
            }
            if d >= self.order() {
                out += &(c * m);
            } else {
                out += &(c * &m.truncate_t(d));
            }
        }
        TSeries::new(out, d)
    }

    /// `∂^k F / ∂t_{w_1} ... ∂t_{w_k}`, correct through degree `D - k`.
    pub fn derivative(&self, indices: &[usize]) -> Result<TSeries> {
        let k = indices.len() as u32;
        if k > self.order() {
            return Err(Error::TruncationTooLow {
                what: format!("derivative of order {k} of the potential"),
                required: k,
                available: self.order(),
            });
        }
        let mut s = self.potential().clone();
        for &w in indices {
            s = s.derivative(self.kernel.t_var(w));
        }
        Ok(s)
    }

    /// The third derivative of `F` when every index is a supported
    /// variable and `D >= 3`, and [`Self::lambda`] otherwise.
    pub fn three_point(&self, u: usize, w: usize, tau: usize) -> TSeries {
        self.three_point_to(u, w, tau, self.order())
    }

    /// [`Self::three_point`] through degree `d` only.
    pub fn three_point_to(&self, u: usize, w: usize, tau: usize, d: u32) -> TSeries {
        let k = &self.kernel;
        if self.order() >= 3 && k.is_supported(u) && k.is_supported(w) && k.is_supported(tau) {
            let d = d.min(self.order() - 3);
            let mut s = self.potential().truncate(d + 3);
            for i in [u, w, tau] {
                s = s.derivative(k.t_var(i));
            }
            s
        } else {
            self.lambda_to(u, w, tau, d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::OnceLock;

    fn ring2() -> &'static QuantumRing {
        static RING: OnceLock<QuantumRing> = OnceLock::new();
        RING.get_or_init(|| QuantumRing::new(2).unwrap())
    }

    fn t(s: &str) -> Polynomial {
        Polynomial::t(&s.parse().unwrap())
    }

    fn r(a: i64, b: i64) -> crate::algebra::Rational {
        rational(a, b)
    }

    #[test]
    fn support_parsing() {
        assert_eq!("all".parse::<SupportSpec>().unwrap(), SupportSpec::All);
        assert_eq!(
            "len<=1".parse::<SupportSpec>().unwrap(),
            SupportSpec::MaxLength(1)
        );
        let list: SupportSpec = "1,2,3;2,1,3".parse().unwrap();
        assert_eq!(list.to_string(), "[1,2,3];[2,1,3]");
        assert!(matches!(
            "".parse::<SupportSpec>(),
            Err(Error::EmptySupport)
        ));
        let ring = ring2();
        assert_eq!(SupportSpec::MaxLength(0).resolve(ring).unwrap(), vec![0]);
        assert!(SupportSpec::List(vec!["1,2,3".parse().unwrap()])
            .resolve(ring)
            .is_err());
    }

    #[test]
    fn n2_kernel_order_two() {
        let ring = ring2();
        let k = build_kernel(ring, 2, &[0, 1]).unwrap();
        let (tid, ts) = (t("1,2"), t("2,1"));
        let q1 = Polynomial::q(1);
        let c_id = &(&(&Polynomial::one() + &tid) + &tid.pow(2).scale(&r(1, 2)))
            + &(&q1 * &ts.pow(2)).scale(&r(1, 2));
        let c_s = &ts + &(&tid * &ts);
        let expand = ring.schubert_expand(k.elem()).unwrap();
        assert_eq!(expand, vec![c_id, c_s]);
        assert_eq!(k.truncated(0), ring.one());
    }

    #[test]
    fn n2_potential_order_three() {
        let ring = ring2();
        let k = build_kernel(ring, 3, &[0, 1]).unwrap();
        let (tid, ts) = (t("1,2"), t("2,1"));
        let expected = &(&(&ts + &(&tid * &ts)) + &(&tid.pow(2) * &ts).scale(&r(1, 2)))
            + &(&Polynomial::q(1) * &ts.pow(3)).scale(&r(1, 6));
        assert_eq!(k.potential().poly(), &expected);
        assert!(k.potential().at_zero().is_zero());
    }

    #[test]
    fn n2_inverse_order_one() {
        let ring = ring2();
        let k = build_kernel(ring, 1, &[0, 1]).unwrap();
        let inv = k.inverse_power(1);
        let expand = ring.schubert_expand(&inv).unwrap();
        assert_eq!(expand, vec![&Polynomial::one() - &t("1,2"), -t("2,1")]);
        assert_eq!(k.inverse_power(0), ring.one());
        let k3 = build_kernel(ring, 3, &[0, 1]).unwrap();
        assert_eq!(
            ring.mul_truncated(k3.elem(), &k3.inverse_power(1), 3),
            ring.one()
        );
    }

    #[test]
    fn n2_deformed_schubert_first_order() {
        let ring = ring2();
        let b = PotentialBundle::build(ring, 2, &[0, 1]).unwrap();
        let expand = ring.schubert_expand(b.t_schubert(1)).unwrap();
        assert_eq!(expand[1].truncate_t(1), &Polynomial::one() + &t("1,2"));
        assert_eq!(b.t_schubert(1).at_t_zero(), *ring.schubert_at(1));
    }

    #[test]
    fn initial_condition_n2() {
        let ring = ring2();
        let b = PotentialBundle::build(ring, 3, &[0, 1]).unwrap();
        let d = b.derivative(&[1, 1, 1]).unwrap();
        assert_eq!(d.order(), 0);
        assert_eq!(d.at_zero(), Polynomial::q(1));
        assert!(matches!(
            b.derivative(&[0, 0, 0, 0]),
            Err(Error::TruncationTooLow { .. })
        ));
        assert_eq!(b.phi(0).at_zero(), Polynomial::zero());
        assert_eq!(b.phi(1).at_zero(), Polynomial::one());
        assert_eq!(b.lambda(1, 1, 1).at_zero(), Polynomial::q(1));
    }
}
