use proptest::prelude::*;

use qschubert::algebra::{Alphabet, Monomial, Polynomial, Rational, RationalFunction, VarId};
use qschubert::schubert::{divided_difference, divided_difference_perm, divided_difference_word};
use qschubert::series::TSeries;
use qschubert::Permutation;

const N: usize = 4;

fn arb_poly_in(vars: Vec<VarId>, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let var = prop::sample::select(vars);
    prop::collection::vec(
        (
            prop::collection::vec((var, 1u32..4), 0..4),
            -9i64..10,
            1i64..5,
        ),
        0..max_terms,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(
            terms
                .into_iter()
                .map(|(m, a, b)| (Monomial::from_pairs(m), Rational::new(a.into(), b.into()))),
        )
    })
}

fn x_vars() -> Vec<VarId> {
    let mut v: Vec<VarId> = (1..=N as u8).map(VarId::X).collect();
    v.push(VarId::Q(1));
    v
}

fn t_vars() -> Vec<VarId> {
    Permutation::all(3)
        .iter()
        .map(VarId::t)
        .chain([VarId::Q(1), VarId::X(1)])
        .collect()
}

fn arb_perm() -> impl Strategy<Value = Permutation> {
    Just(Permutation::all(N)).prop_flat_map(prop::sample::select)
}

fn dd(i: usize, p: &Polynomial) -> Polynomial {
    divided_difference(N, i, p, Alphabet::X).unwrap()
}

fn swap(i: usize, p: &Polynomial) -> Polynomial {
    let (a, b) = (VarId::X(i as u8), VarId::X(i as u8 + 1));
    p.map_vars(|v| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    })
}

/// A reduced word for `w` built from randomly chosen right descents.
fn random_reduced_word(w: &Permutation, choices: &[usize]) -> Vec<usize> {
    let mut w = w.clone();
    let mut word = Vec::new();
    let mut k = 0;
    while !w.is_identity() {
        let descents = w.descents();
        let i = descents[choices[k % choices.len()] % descents.len()];
        k += 1;
        word.push(i);
        w = w
            .compose(&Permutation::simple(w.size(), i).unwrap())
            .unwrap();
    }
    word.reverse();
    word
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divided_difference_is_exact_quotient(p in arb_poly_in(x_vars(), 6), i in 1..N) {
        let lhs = &dd(i, &p) * &(&Polynomial::x(i) - &Polynomial::x(i + 1));
        prop_assert_eq!(lhs, &p - &swap(i, &p));
    }

    #[test]
    fn leibniz_rule(f in arb_poly_in(x_vars(), 4), g in arb_poly_in(x_vars(), 4), i in 1..N) {
        let lhs = dd(i, &(&f * &g));
        let rhs = &(&dd(i, &f) * &g) + &(&swap(i, &f) * &dd(i, &g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_difference_squares_to_zero(p in arb_poly_in(x_vars(), 6), i in 1..N) {
        prop_assert!(dd(i, &dd(i, &p)).is_zero());
    }

    #[test]
    fn braid_and_commutation(p in arb_poly_in(x_vars(), 5)) {
        for i in 1..N - 1 {
            let a = dd(i, &dd(i + 1, &dd(i, &p)));
            let b = dd(i + 1, &dd(i, &dd(i + 1, &p)));
            prop_assert_eq!(a, b);
        }
        prop_assert_eq!(dd(1, &dd(3, &p)), dd(3, &dd(1, &p)));
    }

    #[test]
    fn reduced_word_independence(
        w in arb_perm(),
        choices in prop::collection::vec(0usize..6, 1..8),
        p in arb_poly_in(x_vars(), 5),
    ) {
        let word = random_reduced_word(&w, &choices);
        prop_assert_eq!(word.len(), w.length());
        prop_assert_eq!(Permutation::from_word(N, &word).unwrap(), w.clone());
        let a = divided_difference_word(N, &word, &p, Alphabet::X).unwrap();
        let b = divided_difference_perm(&w, &p, Alphabet::X).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn permutation_round_trips(w in arb_perm(), v in arb_perm()) {
        prop_assert!(w.compose(&w.inverse()).unwrap().is_identity());
        prop_assert_eq!(Permutation::from_lehmer_code(&w.lehmer_code()).unwrap(), w.clone());
        prop_assert_eq!(w.reduced_word().len(), w.length());
        let wv = w.compose(&v).unwrap();
        for i in 1..=N {
            prop_assert_eq!(wv.apply(i), w.apply(v.apply(i)));
        }
    }

    #[test]
    fn rational_function_equivalence(
        a in arb_poly_in(t_vars(), 4),
        b in arb_poly_in(t_vars(), 3),
        c in arb_poly_in(t_vars(), 3),
    ) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let f = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let scaled = RationalFunction::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(&f, &scaled);
        let g = RationalFunction::new(c.clone(), b.clone()).unwrap();
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        prop_assert_eq!(&f * &g, &g * &f);
        if !a.is_zero() {
            prop_assert_eq!(&f * &f.recip().unwrap(), RationalFunction::one());
        }
        let v = t_vars()[1];
        let d = f.derivative(v);
        let expected = RationalFunction::new(
            &(&a.derivative(v) * &b) - &(&a * &b.derivative(v)),
            &b * &b,
        ).unwrap();
        prop_assert_eq!(d, expected);
    }

    #[test]
    fn truncation_is_idempotent(p in arb_poly_in(t_vars(), 8), d1 in 0u32..4, d2 in 0u32..4) {
        let once = p.truncate_t(d1);
        prop_assert_eq!(once.truncate_t(d1), once.clone());
        prop_assert_eq!(once.truncate_t(d2), p.truncate_t(d1.min(d2)));
        let s = TSeries::new(p.clone(), d1);
        prop_assert_eq!(s.truncate(d2).truncate(d2), s.truncate(d2));
    }

    #[test]
    fn truncated_product_matches_full_product(
        a in arb_poly_in(t_vars(), 6),
        b in arb_poly_in(t_vars(), 6),
        d in 0u32..5,
    ) {
        prop_assert_eq!(a.mul_truncated_t(&b, d), (&a * &b).truncate_t(d));
        let s = TSeries::new(a.clone(), d).mul(&TSeries::new(b.clone(), d + 1));
        prop_assert_eq!(s.order(), d);
        prop_assert_eq!(s.poly(), &(&a * &b).truncate_t(d));
    }
}
