//! JSON records for polynomials and the on-disk caches.
//!
//! Rationals are written as decimal strings; no binary floats appear in any
//! output. Every cache file carries a schema version and the `n` (and
//! degree) it was generated for; a mismatch or parse failure triggers a
//! rebuild that overwrites the file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, Polynomial, Rational, RationalFunction, VarId};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::quotient::EchelonSlice;
use crate::schubert::SchubertTable;

pub const CACHE_SCHEMA: u32 = 1;

/// One polynomial term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exponents: BTreeMap<String, u32>,
    pub num: String,
    pub den: String,
}

/// Terms of `p` in descending monomial order.
pub fn poly_records(p: &Polynomial) -> Vec<TermRecord> {
    p.terms()
        .rev()
        .map(|(m, c)| TermRecord {
            exponents: monomial_record(m),
            num: c.numer().to_string(),
            den: c.denom().to_string(),
        })
        .collect()
}

fn monomial_record(m: &Monomial) -> BTreeMap<String, u32> {
    m.factors()
        .iter()
        .map(|(v, e)| (v.to_string(), *e))
        .collect()
}

fn parse_monomial(rec: &BTreeMap<String, u32>) -> Result<Monomial> {
    let pairs = rec
        .iter()
        .map(|(k, &e)| Ok((k.parse::<VarId>()?, e)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Monomial::from_pairs(pairs))
}

pub fn poly_from_records(records: &[TermRecord]) -> Result<Polynomial> {
    let bad = |s: &str| Error::Internal(format!("bad rational component {s:?}"));
    let mut p = Polynomial::zero();
    for r in records {
        let num: BigInt = r.num.parse().map_err(|_| bad(&r.num))?;
        let den: BigInt = r.den.parse().map_err(|_| bad(&r.den))?;
        if den == BigInt::from(0) {
            return Err(bad(&r.den));
        }
        p.add_term(parse_monomial(&r.exponents)?, Rational::new(num, den));
    }
    Ok(p)
}

/// A rational function as `{num, den}` term lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunctionRecord {
    pub num: Vec<TermRecord>,
    pub den: Vec<TermRecord>,
}

pub fn rf_record(f: &RationalFunction) -> RationalFunctionRecord {
    RationalFunctionRecord {
        num: poly_records(f.num()),
        den: poly_records(f.den()),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct SchubertEntry {
    perm: Permutation,
    classical: Vec<TermRecord>,
    quantum: Vec<TermRecord>,
    double: Vec<TermRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SchubertFile {
    schema: u32,
    n: usize,
    entries: Vec<SchubertEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EchelonRow {
    pivot: BTreeMap<String, u32>,
    normal_form: Vec<TermRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
struct EchelonFile {
    schema: u32,
    n: usize,
    degree: u32,
    rows: Vec<EchelonRow>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ChangeOfBasisFile {
    schema: u32,
    n: usize,
    /// `[w][I]`, permutations and exponents both in lexicographic order.
    matrix: Vec<Vec<Vec<TermRecord>>>,
}

/// Serializes a Schubert table as a JSON value (permutation order is
/// lexicographic).
pub fn schubert_table_json(table: &SchubertTable) -> serde_json::Value {
    serde_json::to_value(schubert_file(table)).expect("serializable")
}

fn schubert_file(table: &SchubertTable) -> SchubertFile {
    SchubertFile {
        schema: CACHE_SCHEMA,
        n: table.n(),
        entries: table
            .perms()
            .iter()
            .enumerate()
            .map(|(i, w)| SchubertEntry {
                perm: w.clone(),
                classical: poly_records(&table.classical_all()[i]),
                quantum: poly_records(&table.quantum_all()[i]),
                double: poly_records(&table.double_all()[i]),
            })
            .collect(),
    }
}

pub fn schubert_cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("schubert_n{n}.json"))
}

pub fn echelon_cache_path(dir: &Path, n: usize, degree: u32) -> PathBuf {
    dir.join(format!("echelon_n{n}_d{degree}.json"))
}

pub fn change_of_basis_cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("change_of_basis_n{n}.json"))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Option<T> {
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string(value)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_or_build_schubert_table(dir: &Path, n: usize) -> Result<SchubertTable> {
    let path = schubert_cache_path(dir, n);
    if let Some(file) = read_json::<SchubertFile>(&path) {
        if file.schema == CACHE_SCHEMA && file.n == n {
            if let Ok(table) = table_from_file(&file) {
                return Ok(table);
            }
        }
    }
    let table = SchubertTable::build(n)?;
    write_json(&path, &schubert_file(&table))?;
    Ok(table)
}

fn table_from_file(file: &SchubertFile) -> Result<SchubertTable> {
    let perms = Permutation::all(file.n);
    if file.entries.len() != perms.len()
        || file.entries.iter().zip(&perms).any(|(e, p)| e.perm != *p)
    {
        return Err(Error::Internal("Schubert cache out of order".into()));
    }
    let mut classical = Vec::new();
    let mut quantum = Vec::new();
    let mut double = Vec::new();
    for e in &file.entries {
        classical.push(poly_from_records(&e.classical)?);
        quantum.push(poly_from_records(&e.quantum)?);
        double.push(poly_from_records(&e.double)?);
    }
    SchubertTable::from_parts(file.n, classical, quantum, double)
}

pub fn load_or_build_slice(
    dir: &Path,
    n: usize,
    degree: u32,
    gens: &[Polynomial],
) -> Result<EchelonSlice> {
    let path = echelon_cache_path(dir, n, degree);
    if let Some(file) = read_json::<EchelonFile>(&path) {
        if file.schema == CACHE_SCHEMA && file.n == n && file.degree == degree {
            let parsed: Result<BTreeMap<Monomial, Polynomial>> = file
                .rows
                .iter()
                .map(|r| {
                    Ok((
                        parse_monomial(&r.pivot)?,
                        poly_from_records(&r.normal_form)?,
                    ))
                })
                .collect();
            if let Ok(reductions) = parsed {
                return Ok(EchelonSlice {
                    n,
                    degree,
                    reductions,
                });
            }
        }
    }
    let slice = EchelonSlice::build(n, degree, gens)?;
    let file = EchelonFile {
        schema: CACHE_SCHEMA,
        n,
        degree,
        rows: slice
            .reductions
            .iter()
            .map(|(m, p)| EchelonRow {
                pivot: monomial_record(m),
                normal_form: poly_records(p),
            })
            .collect(),
    };
    write_json(&path, &file)?;
    Ok(slice)
}

pub fn load_or_build_change_of_basis(
    dir: &Path,
    n: usize,
    build: impl FnOnce() -> Result<Vec<Vec<Polynomial>>>,
) -> Result<Vec<Vec<Polynomial>>> {
    let path = change_of_basis_cache_path(dir, n);
    if let Some(file) = read_json::<ChangeOfBasisFile>(&path) {
        if file.schema == CACHE_SCHEMA && file.n == n {
            let parsed: Result<Vec<Vec<Polynomial>>> = file
                .matrix
                .iter()
                .map(|row| row.iter().map(|c| poly_from_records(c)).collect())
                .collect();
            if let Ok(m) = parsed {
                return Ok(m);
            }
        }
    }
    let m = build()?;
    let file = ChangeOfBasisFile {
        schema: CACHE_SCHEMA,
        n,
        matrix: m
            .iter()
            .map(|row| row.iter().map(poly_records).collect())
            .collect(),
    };
    write_json(&path, &file)?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let var = prop_oneof![
            (1u8..4).prop_map(VarId::X),
            (1u8..3).prop_map(VarId::Q),
            (0usize..6).prop_map(|i| VarId::t(&Permutation::all(3)[i])),
        ];
        prop::collection::vec(
            (
                prop::collection::vec((var, 1u32..4), 0..3),
                -20i64..20,
                1i64..7,
            ),
            0..6,
        )
        .prop_map(|terms| {
            Polynomial::from_terms(
                terms
                    .into_iter()
                    .map(|(m, a, b)| (Monomial::from_pairs(m), Rational::new(a.into(), b.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn records_round_trip(p in arb_poly()) {
            let back = poly_from_records(&poly_records(&p)).unwrap();
            prop_assert_eq!(back, p);
        }
    }

    #[test]
    fn cache_round_trip_and_schema_mismatch() {
        let dir = std::env::temp_dir().join(format!("qschubert-serial-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let built = load_or_build_schubert_table(&dir, 3).unwrap();
        let loaded = load_or_build_schubert_table(&dir, 3).unwrap();
        assert_eq!(built, loaded);

        // a stale schema is rebuilt, never reused
        let path = schubert_cache_path(&dir, 3);
        let text = fs::read_to_string(&path)
            .unwrap()
            .replace("\"schema\":1", "\"schema\":0");
        fs::write(&path, text).unwrap();
        assert_eq!(load_or_build_schubert_table(&dir, 3).unwrap(), built);
        let file: SchubertFile = read_json(&path).unwrap();
        assert_eq!(file.schema, CACHE_SCHEMA);

        // a file generated for another n is not reused
        fs::copy(schubert_cache_path(&dir, 3), schubert_cache_path(&dir, 2)).unwrap();
        let t2 = load_or_build_schubert_table(&dir, 2).unwrap();
        assert_eq!(t2.n(), 2);
        fs::remove_dir_all(&dir).unwrap();
    }
}
