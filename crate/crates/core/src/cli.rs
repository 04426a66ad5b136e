//! Command-line front end. [`run`] is pure: it takes the argument list and
//! returns the exit code together with everything destined for stdout and
//! stderr, so the binary is a thin wrapper and tests can call it directly.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or validation
//! error, 3 budget exceeded.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{catalog_entries, lookup, parse_spec, validate_q, GroupDatum, GroupSpec, PrimePowerQ};
use crate::counting::{betti, group_order, stacky_count, stacky_partial_sum, CrossCheck};
use crate::error::Error;
use crate::exact::{decimal_approx, BigRational, RationalJson};
use crate::oracle::{self, OracleFamily};
use crate::verify::{run_suites, Suite, SweepConfig};
use crate::zeta::{euler_exp_discrepancy, zeta_euler_truncated, zeta_exp};

const APPROX_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "chevalley", version, about = "Exact point counts and zeta functions of classifying stacks BG")]
struct Cli {
    /// Output format for data lines.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order of G(F_{q^i}).
    Order {
        spec: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        ext: u64,
    },
    /// Groupoid cardinality #BG(F_{q^i}), optionally with a truncated multi-sum.
    Bg {
        spec: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        ext: u64,
        /// Per-index cutoff N of the multi-sum.
        #[arg(long)]
        series: Option<u64>,
    },
    /// Zeta function coefficients a_0..a_M.
    Zeta {
        spec: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        coeffs: usize,
        /// Also compute the truncated Euler product.
        #[arg(long, requires = "weight")]
        euler: bool,
        /// Weight cutoff W for the Euler product.
        #[arg(long)]
        weight: Option<u64>,
    },
    /// Even Betti numbers b_0, b_2, ..., b_{2M} of BG.
    Betti {
        spec: String,
        #[arg(long)]
        max: usize,
    },
    /// Brute-force order of SL_n, Sp_n or SO_n over F_q (n is the matrix size).
    Oracle {
        #[arg(long, value_parser = ["sl", "sp", "so"])]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// Run invariant sweeps; exit 0 iff all pass.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_rank: u32,
        #[arg(long, default_value_t = 9)]
        max_q: u64,
    },
    /// Dump the compiled-in catalog as JSON.
    Catalog {
        #[arg(long, default_value_t = 8)]
        max_rank: u32,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let code = if e.is_budget() {
        3
    } else if matches!(e, Error::NotRational(_) | Error::NonIntegral(_) | Error::CrossCheckMismatch(_)) {
        1
    } else {
        2
    };
    Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => outcome,
        Err(e) => error_outcome(&e),
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable output");
    s.push('\n');
    s
}

fn resolve(spec: &str, q: u64) -> Result<(GroupSpec, GroupDatum, PrimePowerQ), Error> {
    let spec = parse_spec(spec)?;
    let q = PrimePowerQ::new(q)?;
    validate_q(spec, q)?;
    Ok((spec, lookup(spec), q))
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Order { spec, q, ext } => {
            let (spec, datum, q) = resolve(spec, *q)?;
            let order = group_order(&datum, q, *ext)?;
            Ok(Outcome::ok(if csv {
                format!("group,q,i,order\n{spec},{q},{ext},{order}\n")
            } else {
                json_line(&OrderJson { group: spec.to_string(), q: q.value(), i: *ext, order: order.to_string() })
            }))
        }
        Command::Bg { spec, q, ext, series } => cmd_bg(spec, *q, *ext, *series, csv),
        Command::Zeta { spec, q, coeffs, euler, weight } => cmd_zeta(spec, *q, *coeffs, *euler, *weight, csv),
        Command::Betti { spec, max } => {
            let spec = parse_spec(spec)?;
            let b = betti(&lookup(spec), *max);
            Ok(Outcome::ok(if csv {
                let mut s = String::from("degree,betti\n");
                for (m, v) in b.iter().enumerate() {
                    writeln!(s, "{},{v}", 2 * m).unwrap();
                }
                s
            } else {
                json_line(&BettiJson { group: spec.to_string(), max: *max, betti: b })
            }))
        }
        Command::Oracle { family, n, q } => {
            let family: OracleFamily = family.parse()?;
            let start = Instant::now();
            let order = oracle::order(family, *n, *q)?;
            let elapsed_ms = start.elapsed().as_millis() as u64;
            Ok(Outcome::ok(json_line(&OracleJson { family, n: *n, q: *q, order, elapsed_ms })))
        }
        Command::Verify { suite, max_rank, max_q } => {
            let suites = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse::<Suite>()?] };
            let reports = run_suites(&suites, SweepConfig { max_rank: *max_rank, max_q: *max_q });
            let mut out = String::new();
            let mut err = String::new();
            if csv {
                out.push_str("suite,cases,failures\n");
            }
            for r in &reports {
                if csv {
                    writeln!(out, "{},{},{}", r.suite, r.cases, r.failures).unwrap();
                } else {
                    out.push_str(&json_line(r));
                }
                for f in &r.failed_cases {
                    writeln!(err, "FAIL {}: {f}", r.suite).unwrap();
                }
            }
            let code = if reports.iter().all(|r| r.passed()) { 0 } else { 1 };
            Ok(Outcome { code, stdout: out, stderr: err })
        }
        Command::Catalog { max_rank } => Ok(Outcome::ok(json_line(&catalog_entries(*max_rank)))),
    }
}

#[derive(Serialize)]
struct OrderJson {
    group: String,
    q: u64,
    i: u64,
    order: String,
}

#[derive(Serialize)]
struct BgJson {
    group: String,
    q: u64,
    i: u64,
    order: String,
    bg_count: RationalJson,
}

#[derive(Serialize)]
struct BgSeriesJson {
    group: String,
    q: u64,
    i: u64,
    cutoff: u64,
    partial: RationalJson,
    tail_bound: RationalJson,
    closed_form: RationalJson,
    cross_check: &'static str,
    within_tail: bool,
}

#[derive(Serialize)]
struct ZetaJson {
    group: String,
    q: u64,
    #[serde(rename = "M")]
    m: usize,
    mode: &'static str,
    #[serde(rename = "W")]
    w: Option<u64>,
    coefficients: Vec<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    factor_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discrepancies: Option<Vec<RationalJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    majorants: Option<Vec<RationalJson>>,
}

#[derive(Serialize)]
struct BettiJson {
    group: String,
    max: usize,
    betti: Vec<u64>,
}

#[derive(Serialize)]
struct OracleJson {
    family: OracleFamily,
    n: usize,
    q: u64,
    order: u64,
    elapsed_ms: u64,
}

fn cmd_bg(spec: &str, q: u64, ext: u64, series: Option<u64>, csv: bool) -> Result<Outcome, Error> {
    let (spec, datum, q) = resolve(spec, q)?;
    let order = group_order(&datum, q, ext)?;
    let count = stacky_count(&datum, q, ext)?;
    let Some(cutoff) = series else {
        return Ok(Outcome::ok(if csv {
            format!(
                "group,q,i,num,den,approx\n{spec},{q},{ext},{},{},{}\n",
                count.numer(),
                count.denom(),
                decimal_approx(&count, APPROX_DIGITS)
            )
        } else {
            json_line(&BgJson {
                group: spec.to_string(),
                q: q.value(),
                i: ext,
                order: order.to_string(),
                bg_count: (&count).into(),
            })
        }));
    };
    // over F_{q^i}: raise q and every eigenvalue to the i-th power
    let qi = u32::try_from(ext)
        .ok()
        .and_then(|e| q.exponent().checked_mul(e))
        .ok_or_else(|| Error::InvalidArgument(format!("extension degree {ext} too large")))?;
    let qi = PrimePowerQ::from_parts(q.p(), qi)?;
    let sum = stacky_partial_sum(&datum.frobenius_power(ext), qi, cutoff)?;
    let within = crate::counting::within_tail(&count, &sum);
    let cross = match sum.cross_check {
        CrossCheck::Agreed => "agreed",
        CrossCheck::Skipped => "skipped",
    };
    Ok(Outcome::ok(if csv {
        let mut s = String::from("quantity,num,den,approx\n");
        for (name, v) in [("partial", &sum.partial), ("tail_bound", &sum.tail_bound), ("closed_form", &count)] {
            writeln!(s, "{name},{},{},{}", v.numer(), v.denom(), decimal_approx(v, APPROX_DIGITS)).unwrap();
        }
        s
    } else {
        json_line(&BgSeriesJson {
            group: spec.to_string(),
            q: q.value(),
            i: ext,
            cutoff,
            partial: (&sum.partial).into(),
            tail_bound: (&sum.tail_bound).into(),
            closed_form: (&count).into(),
            cross_check: cross,
            within_tail: within,
        })
    }))
}

fn rationals(v: &[BigRational]) -> Vec<RationalJson> {
    v.iter().map(RationalJson::from).collect()
}

fn cmd_zeta(spec: &str, q: u64, m: usize, euler: bool, weight: Option<u64>, csv: bool) -> Result<Outcome, Error> {
    let (spec, datum, q) = resolve(spec, q)?;
    let exp = zeta_exp(&datum, q, m)?;
    let mut out = String::new();
    if csv {
        out.push_str("mode,W,m,num,den,approx\n");
        for (k, a) in exp.coeffs().iter().enumerate() {
            writeln!(out, "exp,,{k},{},{},{}", a.numer(), a.denom(), decimal_approx(a, APPROX_DIGITS)).unwrap();
        }
    } else {
        out.push_str(&json_line(&ZetaJson {
            group: spec.to_string(),
            q: q.value(),
            m,
            mode: "exp",
            w: None,
            coefficients: rationals(exp.coeffs()),
            factor_count: None,
            discrepancies: None,
            majorants: None,
        }));
    }
    if euler {
        let w = weight.expect("clap enforces --weight with --euler");
        let product = zeta_euler_truncated(&datum, q, m, w)?;
        let disc = euler_exp_discrepancy(&datum, q, m, w)?;
        if csv {
            for (k, a) in product.series.coeffs().iter().enumerate() {
                writeln!(out, "euler,{w},{k},{},{},{}", a.numer(), a.denom(), decimal_approx(a, APPROX_DIGITS)).unwrap();
            }
        } else {
            let d: Vec<BigRational> = disc.iter().map(|x| x.discrepancy.clone()).collect();
            let t: Vec<BigRational> = disc.iter().map(|x| x.majorant.clone()).collect();
            out.push_str(&json_line(&ZetaJson {
                group: spec.to_string(),
                q: q.value(),
                m,
                mode: "euler",
                w: Some(w),
                coefficients: rationals(product.series.coeffs()),
                factor_count: Some(product.factor_count),
                discrepancies: Some(rationals(&d)),
                majorants: Some(rationals(&t)),
            }));
        }
        if !disc.iter().all(|x| x.within_majorant()) {
            return Ok(Outcome { code: 1, stdout: out, stderr: "error: discrepancy exceeds majorant\n".into() });
        }
    }
    Ok(Outcome::ok(out))
}
