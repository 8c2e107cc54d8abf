//! Checks on the quotient ring and the quantum Schubert basis.

use rayon::prelude::*;

use super::{QElem, QuantumRing};
use crate::algebra::{Alphabet, Polynomial};
use crate::error::Result;
use crate::report::Check;
use crate::schubert::{classical_schubert_from_staircase, ideal_generators};

/// Classical limit, duality of the residue pairing, unimodularity of the
/// change of basis, positivity of structure constants and that the ideal
/// reduces to zero.
pub fn ring_checks(ring: &QuantumRing) -> Result<Vec<Check>> {
    let dim = ring.dim();
    let perms = ring.perms();
    let table = ring.schubert_table();

    let classical = Check::from_results(
        "schubert.classical_limit",
        None,
        perms
            .par_iter()
            .map(|w| {
                let ok = match classical_schubert_from_staircase(w) {
                    Ok(s) => table
                        .quantum(w)
                        .map(|p| p.set_alphabet_zero(Alphabet::Q) == s)
                        .unwrap_or(false),
                    Err(_) => false,
                };
                (ok, format!("w = {w}"))
            })
            .collect::<Vec<_>>(),
    );

    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|u| (0..dim).map(move |v| (u, v)))
        .collect();
    let orthogonality = Check::from_results(
        "quotient.orthogonality",
        None,
        pairs
            .par_iter()
            .map(|&(u, v)| {
                let p = ring.residue_elem(&ring.mul(ring.schubert_at(u), ring.schubert_at(v)));
                let expected = if u == ring.dual_index(v) {
                    Polynomial::one()
                } else {
                    Polynomial::zero()
                };
                (
                    p == expected,
                    format!("(u, v) = ({}, {}): got {p}", perms[u], perms[v]),
                )
            })
            .collect::<Vec<_>>(),
    );

    let det = ring.change_of_basis_determinant()?;
    let unimodular = det == Polynomial::one() || det == -&Polynomial::one();
    let mut determinant = Check::new("quotient.basis_determinant", None);
    determinant.record(unimodular, || format!("determinant {det}"));

    let table_c = ring.structure_table()?;
    let mut positivity = Check::new("quotient.structure_constants_positive", None);
    for (u, row) in table_c.iter().enumerate() {
        for (v, cs) in row.iter().enumerate() {
            for (w, c) in cs.iter().enumerate() {
                positivity.record(c.is_nonnegative_integral(), || {
                    format!("c({}, {}; {}) = {c}", perms[u], perms[v], perms[w])
                });
            }
        }
    }

    let multipliers: Vec<Polynomial> = ring
        .basis()
        .iter()
        .map(|a| {
            let mut m = Polynomial::one();
            for (i, &e) in a.iter().enumerate() {
                m = &m * &Polynomial::x(i + 1).pow(e);
            }
            m
        })
        .collect();
    let products: Vec<Polynomial> = ideal_generators(ring.n())
        .iter()
        .flat_map(|g| multipliers.iter().map(move |m| g * m))
        .collect();
    let ideal = Check::from_results(
        "quotient.ideal_annihilated",
        None,
        products
            .par_iter()
            .map(|p| {
                let ok = ring.normal_form(p).map(|e| e.is_zero()).unwrap_or(false);
                (ok, format!("{p} does not reduce to zero"))
            })
            .collect::<Vec<_>>(),
    );

    let mut standard = Check::new("quotient.standard_monomials_free", None);
    standard.record(ring.standard_monomials_are_free(), || {
        "a standard monomial was reduced".into()
    });

    let mut unit = Check::new("quotient.identity_is_unit", None);
    let one = ring.one::<Polynomial>();
    for i in 0..dim {
        let e = QElem::unit(dim, i, Polynomial::one());
        unit.record(ring.mul(&one, &e) == e, || {
            format!("1 * x^{:?}", ring.basis()[i])
        });
    }

    Ok(vec![
        classical,
        orthogonality,
        determinant,
        positivity,
        ideal,
        standard,
        unit,
    ])
}
