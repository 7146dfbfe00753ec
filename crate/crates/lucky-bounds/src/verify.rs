//! Direct verification of bound statements against the table, plus the
//! fixed spot checks.
//!
//! A statement passes at n only when the strict inequality is certified:
//! for a lower form `ell_n` must exceed the *upper* endpoint of the
//! evaluated side, for an upper form it must stay below the *lower*
//! endpoint. When the integer falls inside the enclosure the verdict at
//! that n is indeterminate - never silently a pass - and the point is
//! retried once at doubled precision before being counted.
//!
//! Ranges are scanned in fixed-size chunks distributed over a worker
//! pool; reports merge deterministically (the lowest violating n wins).

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{omega, Interval, IntervalError};
use crate::pipeline::{BoundForm, BoundStatement, PipelineOutput, StageLabel};
use crate::sieve::LuckyTable;
use crate::stats::{StatsContext, StatsError};

/// Chunk size of the range scan.
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("range [{lo}, {hi}] invalid for {context}")]
    RangeError {
        lo: u64,
        hi: u64,
        context: String,
    },
    #[error("statement {form} needs rho_n: pass a warmed stats context")]
    NeedsStats { form: &'static str },
    #[error("table integrity check failed: {0}")]
    TableIntegrity(String),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

type Result<T> = std::result::Result<T, VerifyError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Indeterminate,
}

/// Both certified sides at the first violating index.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub n: u64,
    pub ell_n: u64,
    pub rhs_lo: String,
    pub rhs_hi: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub statement_id: String,
    pub round: Option<&'static str>,
    pub range: (u64, u64),
    pub outcome: Outcome,
    pub first_violation: Option<Violation>,
    pub indeterminate_count: u64,
    pub checked: u64,
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// One human-readable summary line.
    pub fn summary_line(&self) -> String {
        let status = match self.outcome {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Indeterminate => "indeterminate",
        };
        let mut line = format!(
            "{:<14} [{}, {}]  {}  ({} checked",
            self.statement_id, self.range.0, self.range.1, status, self.checked
        );
        if self.indeterminate_count > 0 {
            line.push_str(&format!(", {} indeterminate", self.indeterminate_count));
        }
        line.push_str(&format!(", {} ms)", self.wall_time_ms));
        if let Some(v) = &self.first_violation {
            line.push_str(&format!(
                "\n    first violation at n = {}: ell_n = {} vs [{}, {}]",
                v.n, v.ell_n, v.rhs_lo, v.rhs_hi
            ));
        }
        line
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub precision_bits: u32,
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            precision_bits: 128,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum PointVerdict {
    Pass,
    Fail,
    Indeterminate,
}

/// Certified comparison of `ell_n` against the statement's side at one n.
fn check_point(
    stmt: &BoundStatement,
    n: u64,
    ell_n: u64,
    rho_n: Option<&Interval>,
    prec: u32,
) -> std::result::Result<(PointVerdict, Interval), IntervalError> {
    let nv = Interval::from_u64(n, prec);
    let ln = nv.ln()?;
    let llog = if stmt.form.min_n() >= 3 {
        Some(ln.ln()?)
    } else {
        None
    };
    let rhs = stmt.rhs(n, &ln, llog.as_ref(), rho_n)?;
    let verdict = if stmt.form.is_lower() {
        if *rhs.hi() < ell_n {
            PointVerdict::Pass
        } else if *rhs.lo() >= ell_n {
            PointVerdict::Fail
        } else {
            PointVerdict::Indeterminate
        }
    } else if *rhs.lo() > ell_n {
        PointVerdict::Pass
    } else if *rhs.hi() <= ell_n {
        PointVerdict::Fail
    } else {
        PointVerdict::Indeterminate
    };
    Ok((verdict, rhs))
}

struct ChunkResult {
    violation: Option<Violation>,
    indeterminate: u64,
}

fn scan_chunk(
    stmt: &BoundStatement,
    table: &LuckyTable,
    stats: Option<&StatsContext>,
    lo: u64,
    hi: u64,
    prec: u32,
) -> Result<ChunkResult> {
    let rho = if stmt.form.needs_rho() {
        let ctx = stats.ok_or(VerifyError::NeedsStats {
            form: stmt.form.id(),
        })?;
        Some(ctx.rho_range(lo, hi)?)
    } else {
        None
    };
    let mut violation: Option<Violation> = None;
    let mut indeterminate = 0u64;
    for n in lo..=hi {
        let ell_n = table.get(n as usize).expect("range checked");
        let rho_n = rho.as_ref().map(|r| &r[(n - lo) as usize]);
        let (mut verdict, mut rhs) = check_point(stmt, n, ell_n, rho_n, prec)?;
        if verdict == PointVerdict::Indeterminate {
            // one automatic retry at doubled precision
            let retry_rho;
            let rho_n = match (stmt.form.needs_rho(), stats) {
                (true, Some(ctx)) => {
                    retry_rho = ctx.rho(n)?;
                    Some(&retry_rho)
                }
                _ => None,
            };
            let redo = check_point(stmt, n, ell_n, rho_n, prec * 2)?;
            verdict = redo.0;
            rhs = redo.1;
        }
        match verdict {
            PointVerdict::Pass => {}
            PointVerdict::Indeterminate => indeterminate += 1,
            PointVerdict::Fail => {
                if violation.is_none() {
                    violation = Some(Violation {
                        n,
                        ell_n,
                        rhs_lo: format!("{:e}", rhs.lo().to_f64()),
                        rhs_hi: format!("{:e}", rhs.hi().to_f64()),
                    });
                }
                break; // lowest n in this chunk found
            }
        }
    }
    Ok(ChunkResult {
        violation,
        indeterminate,
    })
}

/// Exhaustively verifies `stmt` for every n in `[lo, hi]` against the
/// table. The table's structural invariants are re-checked first, so a
/// corrupted table cannot produce a clean pass.
pub fn verify_range(
    table: &LuckyTable,
    stmt: &BoundStatement,
    lo: u64,
    hi: u64,
    stats: Option<&StatsContext>,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    table
        .validate()
        .map_err(VerifyError::TableIntegrity)?;
    if lo < 1 || hi < lo {
        return Err(VerifyError::RangeError {
            lo,
            hi,
            context: "bounds must satisfy 1 <= lo <= hi".into(),
        });
    }
    if lo < stmt.form.min_n() {
        return Err(VerifyError::RangeError {
            lo,
            hi,
            context: format!(
                "form {} is defined from n = {}",
                stmt.form.id(),
                stmt.form.min_n()
            ),
        });
    }
    if hi > table.len() as u64 {
        return Err(VerifyError::RangeError {
            lo,
            hi,
            context: format!("table holds {} entries", table.len()),
        });
    }
    if stmt.form.needs_rho() {
        let ctx = stats.ok_or(VerifyError::NeedsStats {
            form: stmt.form.id(),
        })?;
        if ctx.warmed_to() < hi {
            return Err(VerifyError::Stats(StatsError::NotWarmed {
                what: "rho",
                needed: hi,
                warmed: ctx.warmed_to(),
            }));
        }
    }

    let chunks: Vec<(u64, u64)> = (lo..=hi)
        .step_by(CHUNK as usize)
        .map(|a| (a, (a + CHUNK - 1).min(hi)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<Result<ChunkResult>> = pool.install(|| {
        chunks
            .par_iter()
            .map(|&(a, b)| scan_chunk(stmt, table, stats, a, b, opts.precision_bits))
            .collect()
    });

    let mut violation: Option<Violation> = None;
    let mut indeterminate = 0u64;
    for r in results {
        let r = r?;
        indeterminate += r.indeterminate;
        if let Some(v) = r.violation {
            match &violation {
                Some(prev) if prev.n <= v.n => {}
                _ => violation = Some(v),
            }
        }
    }
    let outcome = if violation.is_some() {
        Outcome::Fail
    } else if indeterminate > 0 {
        Outcome::Indeterminate
    } else {
        Outcome::Pass
    };
    Ok(VerificationReport {
        statement_id: stmt.form.id().to_string(),
        round: Some(stmt.round.as_str()),
        range: (lo, hi),
        outcome,
        first_violation: violation,
        indeterminate_count: indeterminate,
        checked: hi - lo + 1,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

fn spot_report(id: &str, pass: bool, start: Instant) -> VerificationReport {
    VerificationReport {
        statement_id: id.to_string(),
        round: None,
        range: (0, 0),
        outcome: if pass { Outcome::Pass } else { Outcome::Fail },
        first_violation: None,
        indeterminate_count: 0,
        checked: 1,
        wall_time_ms: start.elapsed().as_millis(),
    }
}

/// The monotone-split inequality behind the error-term estimate,
/// evaluated at a split point `x0` with window end `x1` (`None` for an
/// unbounded window):
///
/// `a (1 - (log(1/0.99) - log(1 - log x / x)) / log x)^2 log x
///    > (-log(1 - log x / x)) / (log x / x) + x^2 / (e^x log x)`
///
/// where `y0 = log(0.99 (x0 - log x0)) / x1` and
/// `a = (-log(1 - y0) - y0) / y0^2` (with `y0 = 0`, `a = 1/2` for the
/// unbounded window). Both sides are monotone in the right direction,
/// so certifying the inequality at `x0` certifies the whole window.
fn tricky_split_check(
    x0: &Interval,
    x1: Option<&Interval>,
    prec: u32,
) -> std::result::Result<bool, IntervalError> {
    let one = Interval::one(prec);
    let half = Interval::from_ratio(1, 2, prec)?;
    let c099 = Interval::from_ratio(99, 100, prec)?;
    let a = match x1 {
        None => half,
        Some(x1) => {
            let y0 = c099
                .mul(&x0.sub(&x0.ln()?))?
                .ln()?
                .div(x1)?;
            one.sub(&y0).ln()?.neg().sub(&y0).div(&y0.pow_int(2)?)?
        }
    };
    let ln_x = x0.ln()?;
    let ratio = ln_x.div(x0)?; // log x / x
    let neg_log_term = one.sub(&ratio).ln()?.neg(); // -log(1 - log x / x)
    let log_inv_099 = c099.ln()?.neg(); // log(1/0.99)
    let lhs_inner = one.sub(&log_inv_099.add(&neg_log_term).div(&ln_x)?);
    let lhs = a.mul(&lhs_inner.pow_int(2)?)?.mul(&ln_x)?;
    let rhs = neg_log_term
        .div(&ratio)?
        .add(&x0.pow_int(2)?.div(&x0.exp().mul(&ln_x)?)?);
    Ok(lhs.certainly_gt(&rhs))
}

/// Re-evaluates the fixed spot computations:
///
/// * the split-point inequality at `x0` in {11.51, 12, 14},
/// * `omega(10^5) = 10770.5... > 2`,
/// * `0.99 (log 10^5 - llog 10^5) = 8.9... > 1`.
///
/// All must certify strictly; failures are report outcomes, not errors.
pub fn verify_fixed_checks(precision_bits: u32) -> Result<Vec<VerificationReport>> {
    let prec = precision_bits;
    let mut out = Vec::new();

    let x_1151 = Interval::from_ratio(1151, 100, prec)?;
    let x_12 = Interval::from_u64(12, prec);
    let x_14 = Interval::from_u64(14, prec);
    let cases: [(&str, &Interval, Option<&Interval>); 3] = [
        ("tricky_split_11.51", &x_1151, Some(&x_12)),
        ("tricky_split_12", &x_12, Some(&x_14)),
        ("tricky_split_14", &x_14, None),
    ];
    for (id, x0, x1) in cases {
        let start = Instant::now();
        let pass = tricky_split_check(x0, x1, prec)?;
        out.push(spot_report(id, pass, start));
    }

    // omega(10^5) certifies > 2 and its decimal expansion starts 10770.5
    let start = Instant::now();
    let om = omega(&Interval::from_u64(100_000, prec))?;
    let pass = om.certainly_gt_u64(2)
        && *om.lo() > *Interval::from_ratio(107705, 10, prec)?.hi()
        && *om.hi() < *Interval::from_ratio(107706, 10, prec)?.lo();
    out.push(spot_report("omega_1e5_above_2", pass, start));

    // 0.99 (log 10^5 - llog 10^5) certifies > 1, expansion starts 8.9
    let start = Instant::now();
    let n = Interval::from_u64(100_000, prec);
    let ln = n.ln()?;
    let v = Interval::from_ratio(99, 100, prec)?.mul(&ln.sub(&ln.ln()?))?;
    let pass = v.certainly_gt_u64(1)
        && *v.lo() > *Interval::from_ratio(89, 10, prec)?.hi()
        && *v.hi() < *Interval::from_ratio(90, 10, prec)?.lo();
    out.push(spot_report("log_gap_1e5_above_1", pass, start));

    Ok(out)
}

/// Verifies every statement the pipeline emitted over
/// `[max(valid_from, form minimum), table end]`. Statements whose
/// validity starts beyond the table produce an empty-range report
/// (outcome pass, zero checked) rather than being silently dropped.
pub fn verify_pipeline_consistency(
    table: &LuckyTable,
    output: &PipelineOutput,
    stats: &StatsContext,
    opts: &VerifyOptions,
) -> Result<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    for stmt in output.statements() {
        let lo = stmt.valid_from.max(stmt.form.min_n());
        let hi = table.len() as u64;
        if lo > hi {
            reports.push(VerificationReport {
                statement_id: stmt.form.id().to_string(),
                round: Some(stmt.round.as_str()),
                range: (lo, hi),
                outcome: Outcome::Pass,
                first_violation: None,
                indeterminate_count: 0,
                checked: 0,
                wall_time_ms: 0,
            });
            continue;
        }
        reports.push(verify_range(table, stmt, lo, hi, Some(stats), opts)?);
    }
    Ok(reports)
}

/// Head range check of the bootstrap chain: the base theorem statement
/// over `[1, head_to]`.
pub fn verify_bootstrap_head(
    table: &LuckyTable,
    head_to: u64,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let stmt = thm_lower_1();
    verify_range(table, &stmt, 1, head_to.min(table.len() as u64), None, opts)
}

/// The parameter-free theorem statements.
pub fn thm_lower_1() -> BoundStatement {
    BoundStatement {
        form: BoundForm::ThmLower1,
        round: StageLabel::Bootstrapping,
        valid_from: 1,
        c1: None,
        c2: None,
        c3: None,
        c4: None,
        c5: None,
        c6: None,
        c7: None,
        c8: None,
    }
}

pub fn thm_upper_1() -> BoundStatement {
    BoundStatement {
        form: BoundForm::ThmUpper1,
        round: StageLabel::ThirdHalfRound,
        valid_from: 4,
        c1: None,
        c2: None,
        c3: None,
        c4: None,
        c5: None,
        c6: None,
        c7: None,
        c8: None,
    }
}
