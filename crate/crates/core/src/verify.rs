//! Invariant sweeps behind `chevalley verify`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{lookup, parse_spec, validate_q, GroupDatum, GroupSpec, PrimePowerQ, Twist};
use crate::counting::{group_order, stacky_count, stacky_partial_sum, tail_bound, within_tail, CrossCheck};
use crate::error::{Error, Result};
use crate::exact::BigRational;
use crate::oracle;
use crate::zeta::{euler_exp_discrepancy, gm_functional_equation_check, zeta_euler_truncated, zeta_exp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Integrality,
    Oracle,
    Reciprocity,
    Series,
    Zeta,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Integrality, Suite::Oracle, Suite::Reciprocity, Suite::Series, Suite::Zeta];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Integrality => "integrality",
            Suite::Oracle => "oracle",
            Suite::Reciprocity => "reciprocity",
            Suite::Series => "series",
            Suite::Zeta => "zeta",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub max_rank: u32,
    pub max_q: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { max_rank: 4, max_q: 9 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: u64,
    pub failures: u64,
    #[serde(skip)]
    pub failed_cases: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Every `(spec, q)` pair in range with `q` admissible for the twist.
pub fn sweep_points(cfg: SweepConfig) -> Vec<(GroupSpec, PrimePowerQ)> {
    let qs = PrimePowerQ::all_up_to(cfg.max_q);
    GroupSpec::all_up_to_rank(cfg.max_rank)
        .into_iter()
        .flat_map(|s| qs.iter().filter(move |&&q| validate_q(s, q).is_ok()).map(move |&q| (s, q)))
        .collect()
}

/// One named check; `Ok(false)` and `Err` both count as failures.
struct Case {
    label: String,
    run: Box<dyn Fn() -> Result<bool> + Send + Sync>,
}

fn case(label: String, run: impl Fn() -> Result<bool> + Send + Sync + 'static) -> Case {
    Case { label, run: Box::new(run) }
}

fn run_cases(suite: Suite, cases: Vec<Case>) -> SuiteReport {
    let results: Vec<(String, bool)> = cases
        .par_iter()
        .map(|c| (c.label.clone(), matches!((c.run)(), Ok(true))))
        .collect();
    let mut failed_cases: Vec<String> = results.iter().filter(|(_, ok)| !ok).map(|(l, _)| l.clone()).collect();
    failed_cases.sort();
    SuiteReport { suite, cases: results.len() as u64, failures: failed_cases.len() as u64, failed_cases }
}

fn integrality_cases(cfg: SweepConfig) -> Vec<Case> {
    sweep_points(cfg)
        .into_iter()
        .map(|(s, q)| {
            case(format!("{s} q={q}"), move || {
                let d = lookup(s);
                for i in 1..=3 {
                    if !group_order(&d, q, i)?.is_positive() {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
        })
        .collect()
}

fn reciprocity_cases(cfg: SweepConfig) -> Vec<Case> {
    sweep_points(cfg)
        .into_iter()
        .map(|(s, q)| {
            case(format!("{s} q={q}"), move || {
                let d = lookup(s);
                for i in 1..=3 {
                    let order = BigRational::from_integer(group_order(&d, q, i)?);
                    if stacky_count(&d, q, i)? * order != BigRational::one() {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
        })
        .collect()
}

/// `(spec, q, oracle family, matrix size)` pairs checked against brute force.
pub const ORACLE_CASES: &[(&str, u64, oracle::OracleFamily, usize)] = &[
    ("A1", 2, oracle::OracleFamily::Sl, 2),
    ("A1", 3, oracle::OracleFamily::Sl, 2),
    ("A1", 5, oracle::OracleFamily::Sl, 2),
    ("A1", 7, oracle::OracleFamily::Sl, 2),
    ("A2", 2, oracle::OracleFamily::Sl, 3),
    ("A2", 3, oracle::OracleFamily::Sl, 3),
    ("C2", 2, oracle::OracleFamily::Sp, 4),
    ("C2", 3, oracle::OracleFamily::Sp, 4),
    ("B2", 2, oracle::OracleFamily::Sp, 4),
    ("B1", 3, oracle::OracleFamily::So, 3),
    ("B1", 5, oracle::OracleFamily::So, 3),
];

fn oracle_cases(cfg: SweepConfig) -> Vec<Case> {
    ORACLE_CASES
        .iter()
        .filter(|&&(name, qv, _, _)| qv <= cfg.max_q && parse_spec(name).map(|s| s.rank() <= cfg.max_rank).unwrap_or(false))
        .map(|&(name, qv, family, n)| {
            case(format!("{name} q={qv} vs {family:?}_{n}"), move || {
                let d = lookup(parse_spec(name)?);
                let formula = group_order(&d, PrimePowerQ::new(qv)?, 1)?;
                let brute = oracle::order(family, n, qv)?;
                Ok(formula == brute.into())
            })
        })
        .collect()
}

fn series_cases(cfg: SweepConfig) -> Vec<Case> {
    let capped = SweepConfig { max_rank: cfg.max_rank.min(4), ..cfg };
    sweep_points(capped)
        .into_iter()
        .map(|(s, q)| {
            case(format!("{s} q={q}"), move || {
                let d = lookup(s);
                let exact = stacky_count(&d, q, 1)?;
                let mut prev: Option<BigRational> = None;
                for n in 0..=4 {
                    let sum = stacky_partial_sum(&d, q, n)?;
                    if sum.cross_check != CrossCheck::Agreed || !within_tail(&exact, &sum) {
                        return Ok(false);
                    }
                    if prev.as_ref().is_some_and(|p| sum.tail_bound > *p) {
                        return Ok(false);
                    }
                    prev = Some(sum.tail_bound);
                }
                Ok(tail_bound(&d, q, 5) <= prev.unwrap())
            })
        })
        .collect()
}

fn zeta_case(d: &GroupDatum, q: PrimePowerQ) -> Result<bool> {
    let order = 3;
    let z = zeta_exp(d, q, order)?;
    if z.coeff(1) != &stacky_count(d, q, 1)? {
        return Ok(false);
    }
    let logs = z.log_power_sums()?;
    for (i, c) in logs.iter().enumerate() {
        if *c != stacky_count(d, q, i as u64 + 1)? {
            return Ok(false);
        }
    }
    if d.spec.twist() == Twist::None && !z.coeffs().iter().all(|a| a.is_positive()) {
        return Ok(false);
    }
    // the majorant check needs every factor up to a modest weight; keep the factor count small for E_n
    let w = d.dim + 12;
    let disc = euler_exp_discrepancy(d, q, order, w)?;
    if !disc.iter().all(|x| x.within_majorant()) {
        return Ok(false);
    }
    if d.spec.twist() == Twist::Twist3 {
        zeta_euler_truncated(d, q, 4, d.dim + 20)?;
    }
    Ok(true)
}

fn zeta_cases(cfg: SweepConfig) -> Vec<Case> {
    let mut cases: Vec<Case> = sweep_points(cfg)
        .into_iter()
        .map(|(s, q)| case(format!("{s} q={q}"), move || zeta_case(&lookup(s), q)))
        .collect();
    for q in PrimePowerQ::all_up_to(cfg.max_q) {
        cases.push(case(format!("gm functional equation q={q}"), move || gm_functional_equation_check(q, 8)));
    }
    cases
}

/// Run the selected suites; reports come back in suite order.
pub fn run_suites(suites: &[Suite], cfg: SweepConfig) -> Vec<SuiteReport> {
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    suites
        .into_iter()
        .map(|suite| {
            let cases = match suite {
                Suite::Integrality => integrality_cases(cfg),
                Suite::Reciprocity => reciprocity_cases(cfg),
                Suite::Oracle => oracle_cases(cfg),
                Suite::Series => series_cases(cfg),
                Suite::Zeta => zeta_cases(cfg),
            };
            run_cases(suite, cases)
        })
        .collect()
}
