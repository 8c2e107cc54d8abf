//! Command-line front end.
//!
//! Every subcommand writes one JSON document (or CSV for `structconst`) to
//! stdout. Exit status is 0 when all selected checks pass, 1 when one
//! fails, and 2 for usage errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::lax::{lax_checks, lax_matrices, GsBasis};
use crate::perm::Permutation;
use crate::potential::{
    km_conditions_check, orthogonality_t_check, pde_checks_selected, wdvv_check, PotentialBundle,
    SupportSpec,
};
use crate::quotient::{ring_checks, QuantumRing};
use crate::report::{all_passed, Check};
use crate::serial::{poly_records, rf_record, schubert_table_json};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qschubert",
    version,
    about = "Quantum Schubert calculus and a toy Gromov-Witten potential for flag varieties"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Size of the flag variety (2..=4).
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    /// Truncation order D in t (default 4, 3, 2 for n = 2, 3, 4).
    #[arg(long = "trunc", global = true)]
    pub trunc: Option<u32>,
    /// `all`, `len<=K`, or permutations separated by `;`.
    #[arg(long, global = true, default_value = "all")]
    pub support: String,
    /// Directory for cached Schubert tables and normal forms.
    #[arg(long, global = true, env = "SCHUBERT_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Comma-separated check-name prefixes to run (default: all).
    #[arg(long, global = true, value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Abort with failure after this many seconds.
    #[arg(long, global = true)]
    pub time_budget: Option<u64>,
    /// Allow the Lax suite for n = 3 (slow).
    #[arg(long, global = true)]
    pub lax_n3: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Standard monomials and Schubert tables.
    Basis,
    /// Classical, quantum and quantum double Schubert polynomial of `w`.
    Schubert {
        #[arg(long)]
        w: Permutation,
    },
    /// Residue pairing of two quantum Schubert polynomials.
    Pairing {
        #[arg(long)]
        u: Permutation,
        #[arg(long)]
        v: Permutation,
    },
    /// Structure constants; the full table when `--u`/`--v` are omitted.
    Structconst {
        #[arg(long, requires = "v")]
        u: Option<Permutation>,
        #[arg(long, requires = "u")]
        v: Option<Permutation>,
    },
    /// The potential, its first derivatives and the derivative identities.
    Potential,
    /// WDVV residuals through the given degree (default D - 3).
    Wdvv {
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Normalization, initial and degree conditions at t = 0.
    Conditions,
    /// Gram-Schmidt basis, Lax matrices and their identities.
    Lax,
    /// Every check suite in one report.
    VerifyAll,
}

/// Resolved run configuration, echoed in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub trunc: u32,
    pub support: String,
    pub format: Format,
    pub checks: Vec<String>,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    #[serde(skip)]
    pub lax_n3: bool,
}

impl RunConfig {
    pub fn from_args(args: &ConfigArgs) -> Result<Self> {
        if !(2..=4).contains(&args.n) {
            return Err(Error::OutOfRange {
                what: "n",
                value: args.n as i64,
                range: "2..=4".into(),
            });
        }
        let spec: SupportSpec = args.support.parse()?;
        Ok(RunConfig {
            n: args.n,
            trunc: args.trunc.unwrap_or(match args.n {
                2 => 4,
                3 => 3,
                _ => 2,
            }),
            support: spec.to_string(),
            format: args.format,
            checks: args
                .checks
                .iter()
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect(),
            cache_dir: args.cache_dir.clone(),
            lax_n3: args.lax_n3,
        })
    }

    fn support_spec(&self) -> SupportSpec {
        self.support.parse().expect("validated")
    }

    fn ring(&self) -> Result<QuantumRing> {
        if let Some(dir) = &self.cache_dir {
            std::fs::create_dir_all(dir)?;
        }
        QuantumRing::with_cache_dir(self.n, self.cache_dir.as_deref())
    }

    fn selects(&self, name: &str) -> bool {
        self.checks.is_empty() || self.checks.iter().any(|p| name.starts_with(p.as_str()))
    }

    /// Whether any selected check can live under `prefix`.
    fn wants_suite(&self, prefix: &str) -> bool {
        self.checks.is_empty()
            || self
                .checks
                .iter()
                .any(|p| p.starts_with(prefix) || prefix.starts_with(p.as_str()))
    }

    fn filter(&self, checks: Vec<Check>) -> Vec<Check> {
        checks
            .into_iter()
            .filter(|c| self.selects(&c.name))
            .collect()
    }
}

/// Output of a subcommand: the document to print and whether it passed.
pub struct Outcome {
    pub body: String,
    pub passed: bool,
}

fn poly_json(p: &Polynomial) -> Value {
    json!({ "text": p.to_string(), "terms": poly_records(p) })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn check_perm(ring: &QuantumRing, w: &Permutation) -> Result<usize> {
    ring.perm_index(w)
}

fn report(
    config: &RunConfig,
    command: &str,
    mut extra: serde_json::Map<String, Value>,
    checks: Vec<Check>,
) -> Outcome {
    let checks = config.filter(checks);
    let passed = all_passed(&checks);
    extra.insert("command".into(), json!(command));
    extra.insert("config".into(), json!(config));
    extra.insert("checks".into(), json!(checks));
    extra.insert("passed".into(), json!(passed));
    Outcome {
        body: to_json(&Value::Object(extra)),
        passed,
    }
}

fn document(command: &str, config: &RunConfig, fields: Value) -> Outcome {
    let mut map = match fields {
        Value::Object(m) => m,
        other => {
            let mut m = serde_json::Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    map.insert("command".into(), json!(command));
    map.insert("config".into(), json!(config));
    Outcome {
        body: to_json(&Value::Object(map)),
        passed: true,
    }
}

fn require_json(config: &RunConfig, command: &str) -> Result<()> {
    if config.format == Format::Csv {
        return Err(Error::Internal(format!(
            "--format csv is only supported by structconst, not {command}"
        )));
    }
    Ok(())
}

fn lax_suite(config: &RunConfig, b: &PotentialBundle) -> Result<(Vec<Check>, Option<Value>)> {
    if config.n == 3 && !config.lax_n3 {
        return Ok((vec![Check::skipped("lax", "n = 3 needs --lax-n3")], None));
    }
    if config.n > 3 {
        return Ok((
            vec![Check::skipped("lax", "only n <= 3 is supported")],
            None,
        ));
    }
    let basis = GsBasis::new(b.kernel().clone())?;
    let mats = lax_matrices(&basis);
    let checks = lax_checks(&basis, &mats);
    let ring = b.ring();
    let name = |w: usize| ring.perms()[w].to_string();
    let matrices: BTreeMap<String, Value> = (0..ring.dim())
        .map(|w| {
            let rf = |m: &Vec<Vec<crate::algebra::RationalFunction>>| -> Value {
                json!(m
                    .iter()
                    .map(|row| row.iter().map(rf_record).collect::<Vec<_>>())
                    .collect::<Vec<_>>())
            };
            (name(w), json!({ "L": rf(&mats.l[w]), "M": rf(&mats.m[w]) }))
        })
        .collect();
    let data = json!({
        "basis_order": (0..basis.dim()).map(|k| name(basis.perm_of(k))).collect::<Vec<_>>(),
        "vectors": (0..basis.dim())
            .map(|k| basis.vector(k).coeffs().iter().map(rf_record).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "norms": mats.norms.iter().map(rf_record).collect::<Vec<_>>(),
        "matrices": matrices,
    });
    Ok((checks, Some(data)))
}

fn wdvv_suite(config: &RunConfig, b: &PotentialBundle, degree: Option<u32>) -> Result<Check> {
    match degree {
        Some(d) => wdvv_check(b, d),
        None if config.trunc >= 3 => wdvv_check(b, config.trunc - 3),
        None => Ok(Check::skipped("potential.wdvv", "needs truncation order 3")),
    }
}

/// Runs one subcommand without printing.
pub fn execute(config: &RunConfig, command: &Command) -> Result<Outcome> {
    let ring = config.ring()?;
    let name = |w: usize| ring.perms()[w].to_string();
    let bundle = || -> Result<PotentialBundle> {
        let support = config.support_spec().resolve(&ring)?;
        PotentialBundle::build(&ring, config.trunc, &support)
    };
    match command {
        Command::Basis => {
            require_json(config, "basis")?;
            Ok(document(
                "basis",
                config,
                json!({
                    "monomials": ring.basis(),
                    "permutations": ring.perms().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    "schubert": schubert_table_json(ring.schubert_table()),
                }),
            ))
        }
        Command::Schubert { w } => {
            require_json(config, "schubert")?;
            check_perm(&ring, w)?;
            let table = ring.schubert_table();
            Ok(document(
                "schubert",
                config,
                json!({
                    "w": w.to_string(),
                    "length": w.length(),
                    "code": w.lehmer_code(),
                    "classical": poly_json(table.classical(w)?),
                    "quantum": poly_json(table.quantum(w)?),
                    "double": poly_json(table.double(w)?),
                }),
            ))
        }
        Command::Pairing { u, v } => {
            require_json(config, "pairing")?;
            let (iu, iv) = (check_perm(&ring, u)?, check_perm(&ring, v)?);
            let p = ring.residue_elem(&ring.mul(ring.schubert_at(iu), ring.schubert_at(iv)));
            Ok(document(
                "pairing",
                config,
                json!({ "u": u.to_string(), "v": v.to_string(), "pairing": poly_json(&p) }),
            ))
        }
        Command::Structconst { u, v } => {
            let rows: Vec<(usize, usize)> = match (u, v) {
                (Some(u), Some(v)) => vec![(check_perm(&ring, u)?, check_perm(&ring, v)?)],
                _ => (0..ring.dim())
                    .flat_map(|a| (0..ring.dim()).map(move |b| (a, b)))
                    .collect(),
            };
            let constants: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&(a, b)| ring.structure_constants(&ring.perms()[a], &ring.perms()[b]))
                .collect::<Result<_>>()?;
            let body = match config.format {
                Format::Csv => {
                    let mut out = String::from("u,v,w,c\n");
                    for (&(a, b), cs) in rows.iter().zip(&constants) {
                        for (w, c) in cs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                            out.push_str(&format!(
                                "\"{}\",\"{}\",\"{}\",{}\n",
                                name(a),
                                name(b),
                                name(w),
                                c
                            ));
                        }
                    }
                    out
                }
                Format::Json if u.is_some() => {
                    let map: BTreeMap<String, String> = constants[0]
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(w, c)| (name(w), c.to_string()))
                        .collect();
                    to_json(&map)
                }
                Format::Json => {
                    let table: Vec<Value> = rows
                        .iter()
                        .zip(&constants)
                        .map(|(&(a, b), cs)| {
                            let map: BTreeMap<String, String> = cs
                                .iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(w, c)| (name(w), c.to_string()))
                                .collect();
                            json!({ "u": name(a), "v": name(b), "constants": map })
                        })
                        .collect();
                    to_json(&table)
                }
            };
            Ok(Outcome { body, passed: true })
        }
        Command::Potential => {
            require_json(config, "potential")?;
            let b = bundle()?;
            let mut checks = Vec::new();
            if config.wants_suite("potential.") {
                checks.extend(pde_checks_selected(&b, |name| config.selects(name))?);
                if config.selects("potential.orthogonality_inverse_square") {
                    checks.push(orthogonality_t_check(&b));
                }
            }
            let kernel = b.kernel();
            let mut extra = serde_json::Map::new();
            extra.insert("potential".into(), poly_json(b.potential().poly()));
            extra.insert(
                "phi".into(),
                json!((0..ring.dim())
                    .map(|w| (name(w), b.phi(w).poly().to_string()))
                    .collect::<BTreeMap<_, _>>()),
            );
            let mut first = BTreeMap::new();
            for &w in kernel.support() {
                first.insert(name(w), b.derivative(&[w])?.poly().to_string());
            }
            extra.insert("first_derivatives".into(), json!(first));
            let mut third = BTreeMap::new();
            for &u in kernel.support() {
                for &w in kernel.support().iter().filter(|&&w| w >= u) {
                    for &tau in kernel.support().iter().filter(|&&t| t >= w) {
                        let v = b.three_point(u, w, tau).at_zero();
                        if !v.is_zero() {
                            third.insert(
                                format!("{};{};{}", name(u), name(w), name(tau)),
                                v.to_string(),
                            );
                        }
                    }
                }
            }
            extra.insert("three_point_at_zero".into(), json!(third));
            Ok(report(config, "potential", extra, checks))
        }
        Command::Wdvv { degree } => {
            require_json(config, "wdvv")?;
            if let Some(d) = degree {
                if *d + 3 > config.trunc {
                    return Err(Error::TruncationTooLow {
                        what: format!("WDVV through degree {d}"),
                        required: d + 3,
                        available: config.trunc,
                    });
                }
            }
            let b = bundle()?;
            let check = wdvv_suite(config, &b, *degree)?;
            Ok(report(config, "wdvv", serde_json::Map::new(), vec![check]))
        }
        Command::Conditions => {
            require_json(config, "conditions")?;
            let b = bundle()?;
            Ok(report(
                config,
                "conditions",
                serde_json::Map::new(),
                km_conditions_check(&b),
            ))
        }
        Command::Lax => {
            require_json(config, "lax")?;
            if config.n == 3 && !config.lax_n3 {
                return Err(Error::Internal(
                    "the n = 3 Lax suite is slow; pass --lax-n3".into(),
                ));
            }
            if config.n > 3 {
                return Err(Error::OutOfRange {
                    what: "n",
                    value: config.n as i64,
                    range: "2..=3 for lax".into(),
                });
            }
            let b = bundle()?;
            let (checks, data) = lax_suite(config, &b)?;
            let mut extra = serde_json::Map::new();
            if let Some(d) = data {
                extra.insert("lax".into(), d);
            }
            Ok(report(config, "lax", extra, checks))
        }
        Command::VerifyAll => {
            require_json(config, "verify-all")?;
            let mut checks = Vec::new();
            if config.wants_suite("schubert.") || config.wants_suite("quotient.") {
                checks.extend(ring_checks(&ring)?);
            }
            let b = bundle()?;
            if config.wants_suite("potential.") {
                checks.extend(pde_checks_selected(&b, |name| config.selects(name))?);
                if config.selects("potential.orthogonality_inverse_square") {
                    checks.push(orthogonality_t_check(&b));
                }
            }
            if config.wants_suite("potential.wdvv") {
                checks.push(wdvv_suite(config, &b, None)?);
            }
            if config.wants_suite("conditions.") {
                checks.extend(km_conditions_check(&b));
            }
            if config.wants_suite("lax.") {
                checks.extend(lax_suite(config, &b)?.0);
            }
            Ok(report(config, "verify-all", serde_json::Map::new(), checks))
        }
    }
}

fn run_with_budget(config: RunConfig, command: Command, budget: Option<u64>) -> Result<Outcome> {
    let Some(secs) = budget else {
        return execute(&config, &command);
    };
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(execute(&config, &command));
    });
    match rx.recv_timeout(Duration::from_secs(secs)) {
        Ok(r) => r,
        Err(_) => Ok(Outcome {
            body: to_json(
                &json!({ "error": format!("time budget of {secs} s exceeded"), "passed": false }),
            ),
            passed: false,
        }),
    }
}

/// Parses `argv`, runs the subcommand, prints its output and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    let config = match RunConfig::from_args(&cli.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(jobs) = cli.config.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return EXIT_USAGE;
        }
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run_with_budget(config, cli.command, cli.config.time_budget) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.body.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            if outcome.passed {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
