//! The `negacode` command line.
//!
//! [`run`] parses arguments and returns the exit status with the text that
//! belongs on stdout and stderr, so the binary is a thin wrapper.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::asymptote::{entropy_q, family_report, gv_threshold, FamilyRow, DEFAULT_TOL};
use crate::census::{count_self_dual, enumerate_self_dual_bruteforce, enumerate_self_dual_crt};
use crate::dncode::{
    consta_dihedral_witness_seeded, CodeRecord, DNCode, RingElement, WitnessOutcome,
};
use crate::galois::FieldSpec;
use crate::negafactor::{factor_closed_form, profile_for, profile_of};
use crate::polyring::{factor_xn_plus_1_generic, Polynomial};
use crate::{Budget, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Generic,
    Both,
}

#[derive(Debug, Parser)]
#[command(
    name = "negacode",
    version,
    about = "Double negacirculant codes over odd-characteristic finite fields"
)]
pub struct Cli {
    /// Output format (default depends on the subcommand)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Work ceiling for exhaustive scans; overrides NEGACODE_CAPACITY
    #[arg(long, global = true)]
    pub capacity: Option<u64>,
    /// Seed for randomized spot checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor x^n + 1 over F_q
    Factor {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Generic)]
        method: Method,
    },
    /// Enumerate and count the self-dual DN codes of length 2n
    Census {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Include weight enumerators in the records
        #[arg(long)]
        weights: bool,
    },
    /// The census sorted by decreasing minimum distance
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
    },
    /// Self-duality, minimum distance and (optionally) the dihedral witness of one code
    Check {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Coefficients a_0,...,a_{n-1} as element indices, e.g. 1,1
        #[arg(long)]
        a: String,
        #[arg(long)]
        dihedral: bool,
    },
    /// The delta with H_q(delta) = 1/4
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Best self-dual DN code per length
    Report {
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
    },
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit status for an error: 3 capacity, 2 unmet hypothesis, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capacity { .. } => 3,
        Error::HypothesisUnmet(_)
        | Error::UnsupportedLength(_)
        | Error::NotSeparable { .. }
        | Error::UnsupportedShape(_)
        | Error::NotSelfDual => 2,
        _ => 1,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let budget = cli
        .capacity
        .map(Budget::new)
        .unwrap_or_else(Budget::from_env);
    match execute(&cli, budget) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn field(q: u64) -> Result<FieldSpec> {
    FieldSpec::with_order(q)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn execute(cli: &Cli, budget: Budget) -> Result<(i32, String)> {
    match &cli.command {
        Command::Factor { q, n, method } => {
            factor(*q, *n, *method, cli.format.unwrap_or(Format::Text))
        }
        Command::Census { q, n, weights } => census(
            *q,
            *n,
            *weights,
            false,
            cli.format.unwrap_or(Format::Json),
            budget,
        )
        .map(|s| (0, s)),
        Command::Search { q, n } => census(
            *q,
            *n,
            false,
            true,
            cli.format.unwrap_or(Format::Json),
            budget,
        )
        .map(|s| (0, s)),
        Command::Check { q, n, a, dihedral } => check(
            *q,
            *n,
            a,
            *dihedral,
            cli.seed,
            cli.format.unwrap_or(Format::Text),
            budget,
        )
        .map(|s| (0, s)),
        Command::Bound { q, tol } => {
            bound(*q, *tol, cli.format.unwrap_or(Format::Text)).map(|s| (0, s))
        }
        Command::Report { q, n_list } => {
            report(*q, n_list, cli.format.unwrap_or(Format::Csv), budget).map(|s| (0, s))
        }
    }
}

#[derive(Serialize)]
struct FactorDoc {
    q: u64,
    n: usize,
    factors: Vec<String>,
    profile: crate::negafactor::ProfileRecord,
    agreement: Option<bool>,
}

fn factor(q: u64, n: usize, method: Method, format: Format) -> Result<(i32, String)> {
    let spec = field(q)?;
    check_n(n)?;
    let (factors, agreement) = match method {
        Method::Closed => (factor_closed_form(n, &spec)?, None),
        Method::Generic => (factor_xn_plus_1_generic(n, &spec)?, None),
        Method::Both => {
            let closed = factor_closed_form(n, &spec)?;
            let generic = factor_xn_plus_1_generic(n, &spec)?;
            let agree = closed == generic;
            (closed, Some(agree))
        }
    };
    let profile = profile_of(&factors, n)?.record();
    let shown: Vec<String> = factors.iter().map(Polynomial::to_string).collect();
    let mut out = String::new();
    match format {
        Format::Text => {
            for f in &shown {
                writeln!(out, "{f}").unwrap();
            }
            writeln!(out, "profile: {}", json(&profile)).unwrap();
            if let Some(a) = agreement {
                writeln!(out, "agreement: {a}").unwrap();
            }
        }
        Format::Json => {
            let doc = FactorDoc {
                q,
                n,
                factors: shown,
                profile,
                agreement,
            };
            writeln!(out, "{}", json(&doc)).unwrap();
        }
        Format::Csv => {
            writeln!(out, "factor,degree").unwrap();
            for (f, p) in shown.iter().zip(&factors) {
                writeln!(out, "{f},{}", p.degree().unwrap_or(0)).unwrap();
            }
        }
    }
    Ok((if agreement == Some(false) { 1 } else { 0 }, out))
}

#[derive(Serialize)]
struct CensusSummary {
    q: u64,
    n: usize,
    count_formula: Option<u128>,
    count_enumerated: usize,
    best_d: Option<usize>,
}

fn self_dual_codes(n: usize, spec: &FieldSpec, budget: Budget) -> Result<Vec<RingElement>> {
    match enumerate_self_dual_bruteforce(n, spec, budget) {
        Err(Error::Capacity { .. }) => match enumerate_self_dual_crt(n, spec, budget) {
            Ok(codes) => Ok(codes),
            Err(Error::Capacity { required, limit }) => Err(Error::Capacity { required, limit }),
            Err(_) => enumerate_self_dual_bruteforce(n, spec, budget),
        },
        other => other,
    }
}

/// The formula count, or `None` where the formula does not apply.
fn formula_count(n: usize, spec: &FieldSpec) -> Result<Option<u128>> {
    match profile_for(n, spec).and_then(|p| count_self_dual(&p)) {
        Ok(c) => Ok(Some(c)),
        Err(Error::HypothesisUnmet(_) | Error::NotSeparable { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn census(
    q: u64,
    n: usize,
    weights: bool,
    sorted: bool,
    format: Format,
    budget: Budget,
) -> Result<String> {
    let spec = field(q)?;
    check_n(n)?;
    let codes = self_dual_codes(n, &spec, budget)?;
    let mut records = codes
        .iter()
        .map(|a| CodeRecord::from_code(&DNCode::new(a.clone()), weights, budget))
        .collect::<Result<Vec<_>>>()?;
    if sorted {
        records.sort_by_key(|r| std::cmp::Reverse(r.d));
    }
    let summary = CensusSummary {
        q,
        n,
        count_formula: formula_count(n, &spec)?,
        count_enumerated: records.len(),
        best_d: records.iter().filter_map(|r| r.d).max(),
    };
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in &records {
                writeln!(out, "{}", json(r)).unwrap();
            }
            writeln!(out, "{}", json(&summary)).unwrap();
        }
        Format::Csv => {
            writeln!(out, "q,n,a,self_dual,d").unwrap();
            for r in &records {
                let a: Vec<String> = r.a.iter().map(u64::to_string).collect();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.q,
                    r.n,
                    a.join(" "),
                    r.self_dual,
                    r.d.unwrap_or(0)
                )
                .unwrap();
            }
        }
        Format::Text => {
            for r in &records {
                write!(out, "a={:?} d={}", r.a, r.d.unwrap_or(0)).unwrap();
                if let Some(w) = &r.weight_enum {
                    write!(out, " weights={w:?}").unwrap();
                }
                out.push('\n');
            }
            let formula = summary
                .count_formula
                .map_or("n/a".to_string(), |c| c.to_string());
            writeln!(
                out,
                "q={q} n={n} count_formula={formula} count_enumerated={} best_d={}",
                summary.count_enumerated,
                summary.best_d.map_or("n/a".to_string(), |d| d.to_string())
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn parse_coefficients(text: &str) -> Result<Vec<u64>> {
    let body = text.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad coefficient {t:?} in {text:?}")))
        })
        .collect()
}

#[derive(Serialize)]
struct CheckDoc {
    q: u64,
    n: usize,
    a: Vec<u64>,
    self_dual: bool,
    d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Option<WitnessOutcome>>,
}

fn check(
    q: u64,
    n: usize,
    a: &str,
    dihedral: bool,
    seed: u64,
    format: Format,
    budget: Budget,
) -> Result<String> {
    let spec = field(q)?;
    check_n(n)?;
    if dihedral && (n % 2 == 0 || n < 3) {
        return Err(Error::UnsupportedShape(format!(
            "the dihedral witness needs n odd and at least 3, got {n}"
        )));
    }
    let coeffs = parse_coefficients(a)?;
    let code = DNCode::new(RingElement::from_indices(&spec, n, &coeffs)?);
    let self_dual = code.is_self_dual();
    let d = code.min_distance(None, budget)?.d;
    let witness = if dihedral {
        Some(if self_dual {
            Some(consta_dihedral_witness_seeded(&code, seed)?)
        } else {
            None
        })
    } else {
        None
    };
    let doc = CheckDoc {
        q,
        n,
        a: coeffs,
        self_dual,
        d,
        witness,
    };
    let mut out = String::new();
    match format {
        Format::Json => writeln!(out, "{}", json(&doc)).unwrap(),
        Format::Csv => {
            let a: Vec<String> = doc.a.iter().map(u64::to_string).collect();
            writeln!(out, "q,n,a,self_dual,d").unwrap();
            writeln!(out, "{q},{n},{},{self_dual},{d}", a.join(" ")).unwrap();
        }
        Format::Text => {
            writeln!(out, "self_dual: {self_dual}").unwrap();
            writeln!(out, "d: {d}").unwrap();
            match &doc.witness {
                None => {}
                Some(None) => {
                    writeln!(out, "witness: not applicable (code is not self-dual)").unwrap()
                }
                Some(Some(WitnessOutcome::Found(w))) => {
                    writeln!(out, "witness: found").unwrap();
                    writeln!(out, "tau: {}", json(&w.tau)).unwrap();
                    writeln!(out, "sigma: {}", json(&w.sigma)).unwrap();
                    writeln!(out, "relation_sign: {}", w.relation_sign).unwrap();
                    writeln!(
                        out,
                        "permutation_group_order: {}",
                        w.permutation_group_order
                    )
                    .unwrap();
                }
                Some(Some(WitnessOutcome::NotFound(c))) => {
                    writeln!(out, "witness: failed at {c:?}").unwrap()
                }
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct BoundDoc {
    q: u64,
    tol: f64,
    delta: f64,
    #[serde(rename = "H_q_delta")]
    h_q_delta: f64,
}

fn bound(q: u64, tol: f64, format: Format) -> Result<String> {
    field(q)?;
    let delta = gv_threshold(q, tol)?;
    let doc = BoundDoc {
        q,
        tol,
        delta,
        h_q_delta: entropy_q(delta, q)?,
    };
    Ok(match format {
        Format::Json => format!("{}\n", json(&doc)),
        Format::Csv => format!(
            "q,tol,delta,H_q_delta\n{q},{tol},{delta},{}\n",
            doc.h_q_delta
        ),
        Format::Text => format!("delta* = {delta}\nH_q(delta*) = {}\n", doc.h_q_delta),
    })
}

fn report(q: u64, n_list: &[usize], format: Format, budget: Budget) -> Result<String> {
    for &n in n_list {
        check_n(n)?;
    }
    let rows = family_report(q, n_list, budget)?;
    let mut out = String::new();
    match format {
        Format::Csv => {
            writeln!(out, "{}", FamilyRow::CSV_HEADER).unwrap();
            for r in &rows {
                writeln!(out, "{}", r.csv()).unwrap();
            }
        }
        Format::Json => writeln!(out, "{}", json(&rows)).unwrap(),
        Format::Text => {
            let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            writeln!(
                out,
                "{:>4} {:>6} {:>10} {:>10} {:>6} {:>10} {:>10}",
                "q", "n", "formula", "enum", "d", "delta", "H_q"
            )
            .unwrap();
            for r in &rows {
                writeln!(
                    out,
                    "{:>4} {:>6} {:>10} {:>10} {:>6} {:>10} {:>10}{}",
                    r.q,
                    r.n,
                    show(r.count_formula.map(|c| c.to_string())),
                    show(r.count_enum.map(|c| c.to_string())),
                    show(r.best_d.map(|d| d.to_string())),
                    show(r.delta.map(|d| format!("{d:.6}"))),
                    show(r.h_q_delta.map(|h| format!("{h:.6}"))),
                    r.skipped
                        .as_ref()
                        .map(|s| format!("  skipped: {s}"))
                        .unwrap_or_default()
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}
