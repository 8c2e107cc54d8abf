//! Acceptance criteria, one PASS/FAIL line each. Exact arithmetic
//! throughout; every comparison is equality.

use std::process::{Command, ExitCode};
use std::time::Instant;

use qschubert::algebra::{rational, Alphabet, Monomial, Polynomial, VarId};
use qschubert::lax::{lax_checks, lax_matrices, GsBasis, PRODUCT_RULE_SAMPLES};
use qschubert::potential::{orthogonality_t_check, pde_checks, wdvv_check, PotentialBundle};
use qschubert::quotient::QuantumRing;
use qschubert::report::{Check, Status};
use qschubert::schubert::{quantum_e_generating, SchubertTable};
use qschubert::Permutation;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: qschubert::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn all_indices(ring: &QuantumRing) -> Vec<usize> {
    (0..ring.dim()).collect()
}

fn perm(s: &str) -> Permutation {
    s.parse().expect("literal permutation")
}

fn sign(p: &Permutation) -> i64 {
    if p.length().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Leibniz expansion over all `k!` permutations.
fn leibniz_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    let mut out = Polynomial::zero();
    for p in Permutation::all(k) {
        let mut term = Polynomial::integer(sign(&p));
        for (i, row) in m.iter().enumerate() {
            let e = &row[p.apply(i + 1) - 1];
            if e.is_zero() {
                term = Polynomial::zero();
                break;
            }
            term = &term * e;
        }
        out += &term;
    }
    out
}

/// `(f - s_i f) / (x_i - x_{i+1})` in the `x` alphabet.
fn x_divided_difference(i: usize, f: &Polynomial) -> Polynomial {
    let (a, b) = (VarId::X(i as u8), VarId::X(i as u8 + 1));
    let swapped = f.map_vars(|v| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    });
    let num = f - &swapped;
    let den = &Polynomial::x(i) - &Polynomial::x(i + 1);
    num.try_div_exact(&den)
        .expect("divided difference is exact")
}

/// `∂_w f`, applying the word's letters right to left.
fn x_divided_difference_perm(w: &Permutation, f: &Polynomial) -> Polynomial {
    let mut out = f.clone();
    for &i in w.reduced_word().iter().rev() {
        out = x_divided_difference(i, &out);
    }
    out
}

/// Classical Schubert polynomial `S_w = ∂_{w^{-1} w0} x^δ`.
fn oracle_schubert(w: &Permutation) -> Polynomial {
    let n = w.size();
    let w0 = Permutation::longest(n);
    let staircase = Monomial::from_pairs((1..n).map(|i| (VarId::X(i as u8), (n - i) as u32)));
    let v = w.inverse().compose(&w0).expect("same size");
    x_divided_difference_perm(&v, &Polynomial::monomial(staircase))
}

fn at_x_zero(p: &Polynomial) -> Polynomial {
    p.set_alphabet_zero(Alphabet::X)
}

fn require_pass(checks: &[Check], allow_skip: bool) -> Result<usize, String> {
    let mut items = 0;
    for c in checks {
        match c.status {
            Status::Pass => items += c.items,
            Status::Skipped if allow_skip => {}
            _ => {
                return Err(format!(
                    "{} is {:?}: {:?} {:?}",
                    c.name, c.status, c.failures, c.note
                ))
            }
        }
    }
    Ok(items)
}

fn delta_determinant() -> Outcome {
    let t = Polynomial::y(1);
    for k in 1..=4usize {
        let m: Vec<Vec<Polynomial>> = (1..=k)
            .map(|i| {
                (1..=k)
                    .map(|j| {
                        if i == j {
                            &Polynomial::x(i) + &t
                        } else if j == i + 1 {
                            Polynomial::q(i)
                        } else if i == j + 1 {
                            Polynomial::integer(-1)
                        } else {
                            Polynomial::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let rec = lib(quantum_e_generating(4, k, &t))?;
        ensure(rec == leibniz_det(&m), || {
            format!("k = {k}: recurrence {rec}")
        })?;
    }
    Ok("recurrence equals the determinant for k = 1..4".into())
}

fn classical_limit() -> Outcome {
    let mut count = 0;
    for n in 2..=4 {
        let table = lib(SchubertTable::build(n))?;
        for w in Permutation::all(n) {
            let q0 = lib(table.quantum(&w))?.set_alphabet_zero(Alphabet::Q);
            ensure(q0 == oracle_schubert(&w), || format!("w = {w}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} permutations, n = 2..4"))
}

fn pairing_orthogonality() -> Outcome {
    let mut count = 0;
    for n in 2..=3 {
        let ring = lib(QuantumRing::new(n))?;
        let table = ring.schubert_table();
        let w0 = Permutation::longest(n);
        for u in ring.perms() {
            for v in ring.perms() {
                let p = lib(ring.pairing(lib(table.quantum(u))?, lib(table.quantum(v))?))?;
                let dual = w0.compose(v).expect("same size");
                let expected = if *u == dual {
                    Polynomial::one()
                } else {
                    Polynomial::zero()
                };
                ensure(p == expected, || format!("n = {n}, ({u}, {v}): {p}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} pairs"))
}

fn basis_determinant() -> Outcome {
    for n in 2..=3 {
        let ring = lib(QuantumRing::new(n))?;
        let table = ring.schubert_table();
        let perms = Permutation::all(n);
        let m: Vec<Vec<Polynomial>> = perms
            .iter()
            .map(|w| {
                let parts = lib(table.quantum(w))
                    .map(|p| p.split_by_x(n))
                    .unwrap_or_default();
                perms
                    .iter()
                    .map(|v| {
                        parts
                            .get(&v.lehmer_code())
                            .cloned()
                            .unwrap_or_else(Polynomial::zero)
                    })
                    .collect()
            })
            .collect();
        let det = leibniz_det(&m);
        let unit = det == Polynomial::one() || det == Polynomial::integer(-1);
        ensure(unit, || format!("n = {n}: determinant {det}"))?;
        let lib_det = lib(ring.change_of_basis_determinant())?;
        ensure(lib_det == det, || {
            format!("n = {n}: library determinant {lib_det}")
        })?;
    }
    Ok("determinant is a unit for n = 2, 3".into())
}

fn structure_constants() -> Outcome {
    let ring = lib(QuantumRing::new(3))?;
    let table = ring.schubert_table();
    let perms = ring.perms().to_vec();
    let mut count = 0;
    for u in &perms {
        for v in &perms {
            let cs = lib(ring.structure_constants(u, v))?;
            let product = lib(table.classical(u))? * lib(table.classical(v))?;
            for (w, c) in perms.iter().zip(&cs) {
                ensure(c.is_nonnegative_integral(), || {
                    format!("c({u}, {v}; {w}) = {c}")
                })?;
                let classical = if w.length() == u.length() + v.length() {
                    at_x_zero(&x_divided_difference_perm(w, &product))
                } else {
                    Polynomial::zero()
                };
                let c0 = c.set_alphabet_zero(Alphabet::Q);
                ensure(c0 == classical, || {
                    format!("q = 0: c({u}, {v}; {w}) = {c0}, expected {classical}")
                })?;
                count += 1;
            }
        }
    }
    let s1 = perm("2,1,3");
    let square = lib(ring.structure_constants(&s1, &s1))?;
    let s2s1 = perm("1,3,2").compose(&s1).expect("same size");
    for (w, c) in perms.iter().zip(&square) {
        let expected = if *w == s2s1 {
            Polynomial::one()
        } else if w.is_identity() {
            Polynomial::q(1)
        } else {
            Polynomial::zero()
        };
        ensure(*c == expected, || format!("S_s1^2 coefficient of {w}: {c}"))?;
    }
    Ok(format!("{count} constants in S3; S_s1^2 = S_[3,1,2] + q1"))
}

fn initial_conditions() -> Outcome {
    for n in 2..=3 {
        let ring = lib(QuantumRing::new(n))?;
        let b = lib(PotentialBundle::build(&ring, 3, &all_indices(&ring)))?;
        let w0 = ring.longest_index();
        for k in 1..n {
            let sk = lib(ring.perm_index(&lib(Permutation::simple(n, k))?))?;
            let third = lib(b.derivative(&[sk, sk, w0]))?.at_zero();
            ensure(third == Polynomial::q(k), || {
                format!("n = {n}, k = {k}: {third}")
            })?;
        }
    }
    Ok("q1 for n = 2; q1, q2 for n = 3".into())
}

fn n2_closed_form() -> Outcome {
    let ring = lib(QuantumRing::new(2))?;
    let b = lib(PotentialBundle::build(&ring, 3, &all_indices(&ring)))?;
    let id = Polynomial::t(&perm("1,2"));
    let s1 = Polynomial::t(&perm("2,1"));
    let expected = &(&(&s1 + &(&id * &s1)) + &(&id.pow(2) * &s1).scale(&rational(1, 2)))
        + &(&Polynomial::q(1) * &s1.pow(3)).scale(&rational(1, 6));
    let f = b.potential().poly();
    ensure(*f == expected, || format!("F = {f}"))?;
    Ok(format!("F = {f}"))
}

fn wdvv() -> Outcome {
    let mut parts = Vec::new();
    for (n, expected) in [(2, 16), (3, 1296)] {
        let ring = lib(QuantumRing::new(n))?;
        let b = lib(PotentialBundle::build(&ring, 4, &all_indices(&ring)))?;
        let check = lib(wdvv_check(&b, 1))?;
        require_pass(std::slice::from_ref(&check), false)?;
        ensure(check.items == expected, || {
            format!("n = {n}: {} quadruples", check.items)
        })?;
        parts.push(format!("n = {n}: {expected}"));
    }
    Ok(format!("{} quadruples through degree 1", parts.join(", ")))
}

fn derivative_suite() -> Outcome {
    let consumed = [
        ("potential.first_derivatives", 1),
        ("potential.second_derivatives", 2),
        ("potential.kernel_derivative", 1),
        ("potential.second_derivative_relation", 2),
        ("potential.third_derivatives", 3),
        ("potential.deformed_derivative_expansion", 1),
        ("potential.kernel_pde", 2),
        ("potential.connection_circle", 1),
        ("potential.connection_star", 1),
        ("potential.four_point_expansion", 0),
        ("potential.deformed_residue", 0),
    ];
    let mut items = 0;
    for n in 2..=3 {
        let ring = lib(QuantumRing::new(n))?;
        let b = lib(PotentialBundle::build(&ring, 3, &all_indices(&ring)))?;
        let checks = lib(pde_checks(&b))?;
        items += require_pass(&checks, false)?;
        for (name, k) in consumed {
            let c = checks
                .iter()
                .find(|c| c.name == name)
                .ok_or_else(|| format!("{name} missing"))?;
            ensure(c.certified_degree == Some(3 - k), || {
                format!("n = {n}: {name} certified at {:?}", c.certified_degree)
            })?;
        }
    }
    Ok(format!("{items} instances for n = 2, 3 at D = 3"))
}

fn inverse_square_orthogonality() -> Outcome {
    let mut items = 0;
    for n in 2..=3 {
        let ring = lib(QuantumRing::new(n))?;
        let b = lib(PotentialBundle::build(&ring, 2, &all_indices(&ring)))?;
        let c = orthogonality_t_check(&b);
        items += require_pass(std::slice::from_ref(&c), false)?;
        ensure(c.certified_degree == Some(2), || {
            format!("certified at {:?}", c.certified_degree)
        })?;
    }
    Ok(format!("{items} pairs mod t-degree 3"))
}

fn lax_suite() -> Outcome {
    let ring = lib(QuantumRing::new(2))?;
    let b = lib(PotentialBundle::build(&ring, 4, &all_indices(&ring)))?;
    let basis = lib(GsBasis::new(b.kernel().clone()))?;
    let mats = lax_matrices(&basis);
    let checks = lax_checks(&basis, &mats);
    require_pass(&checks, false)?;
    let items = |name: &str| {
        checks
            .iter()
            .find(|c| c.name == name)
            .map_or(0, |c| c.items)
    };
    ensure(items("lax.product_rule") == PRODUCT_RULE_SAMPLES, || {
        "product rule sample count".into()
    })?;
    ensure(items("lax.lax_equation") == 4, || {
        "Lax equation pair count".into()
    })?;
    ensure(
        items("lax.symmetrizable") == 2 && items("lax.norm_derivative") == 2,
        || "per-w counts".into(),
    )?;
    ensure(items("lax.commuting") == 1, || {
        "commuting pair count".into()
    })?;
    Ok(format!("{} checks, n = 2, D = 4", checks.len()))
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qschubert");
    let run = || {
        Command::new(bin)
            .args(["verify-all", "--n", "2", "--trunc", "4"])
            .env_remove("SCHUBERT_CACHE_DIR")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.code() == Some(0), || {
        format!("exit status {:?}", a.status)
    })?;
    ensure(b.status.code() == Some(0), || {
        format!("exit status {:?}", b.status)
    })?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || {
        "outputs differ".into()
    })?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("delta_determinant", delta_determinant),
        ("classical_limit", classical_limit),
        ("pairing_orthogonality", pairing_orthogonality),
        ("basis_determinant", basis_determinant),
        ("structure_constants", structure_constants),
        ("initial_conditions", initial_conditions),
        ("n2_potential_closed_form", n2_closed_form),
        ("wdvv", wdvv),
        ("derivative_identities", derivative_suite),
        ("inverse_square_orthogonality", inverse_square_orthogonality),
        ("lax_suite", lax_suite),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
