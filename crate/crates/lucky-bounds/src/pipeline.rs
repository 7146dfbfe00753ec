//! The constant pipeline: lemma-by-lemma derivation of certified
//! constants and the bound statements they support.
//!
//! Five stages run in order, each feeding the next:
//!
//! 1. **first lower bound** - from `varrho_{n0}` derive `c0`,
//!    `c1 = 1 - e^{-c0}` and the threshold `n1` with
//!    `ell_n > c1 n log n` for `n >= n1`.
//! 2. **first round** - from `(c1, n1)` derive the tau upper bound
//!    constants `(n2, c2, c3)`, the ell upper bound `(r1, r2, c4)`, the
//!    tau lower bound `(n3, c5, c6)` and the second lower bound
//!    `(r3, r4, c7, c8)`.
//! 3. **bootstrapping** - the threshold `n4` past which the second
//!    lower bound implies `ell_n > n log n`, plus finite-range
//!    applications closing the gap below `n4`.
//! 4. **second round** - the first round repeated with `c1 = 1`.
//! 5. **third half-round** - the first round repeated with `c1 = 1` up
//!    to the ell upper bound, yielding the final upper-bound constants.
//!
//! Every integer threshold is rounded from the pessimistic interval
//! endpoint, so a derived claim never starts earlier than certified.

use std::path::{Path, PathBuf};

use rug::{Integer, Rational};
use serde::Serialize;
use thiserror::Error;

use crate::interval::{
    lambert_w, tail_integral, Interval, IntervalError, TailIntegralKind, TailParams,
};
use crate::stats::{StatsContext, StatsError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("stage {stage}: hypothesis of {lemma} violated: {condition}")]
    HypothesisViolation {
        stage: &'static str,
        lemma: &'static str,
        condition: String,
    },
    #[error("stage {stage}: {source}")]
    Stats {
        stage: &'static str,
        #[source]
        source: StatsError,
    },
    #[error("stage {stage}: {source}")]
    Interval {
        stage: &'static str,
        #[source]
        source: IntervalError,
    },
    #[error("stage {stage}: derived threshold {name} = {value} does not fit in 64 bits")]
    ThresholdOverflow {
        stage: &'static str,
        name: &'static str,
        value: Integer,
    },
}

type Result<T> = std::result::Result<T, PipelineError>;

fn at<T>(stage: &'static str, r: std::result::Result<T, StatsError>) -> Result<T> {
    r.map_err(|source| PipelineError::Stats { stage, source })
}

fn ati<T>(stage: &'static str, r: std::result::Result<T, IntervalError>) -> Result<T> {
    r.map_err(|source| PipelineError::Interval { stage, source })
}

fn to_u64(stage: &'static str, name: &'static str, v: Integer) -> Result<u64> {
    v.to_u64().ok_or(PipelineError::ThresholdOverflow {
        stage,
        name,
        value: v,
    })
}

/// Which stage of the pipeline produced a constant or statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageLabel {
    FirstLowerBound,
    FirstRound,
    Bootstrapping,
    SecondRound,
    ThirdHalfRound,
}

impl StageLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            StageLabel::FirstLowerBound => "first_lower_bound",
            StageLabel::FirstRound => "first_round",
            StageLabel::Bootstrapping => "bootstrapping",
            StageLabel::SecondRound => "second_round",
            StageLabel::ThirdHalfRound => "third_half_round",
        }
    }
}

/// A named certified constant with the derivation it came from.
#[derive(Debug, Clone)]
pub struct ConstantValue {
    pub name: String,
    pub value: ConstantKind,
    /// Name of the derivation rule that produced it.
    pub lemma: &'static str,
}

#[derive(Debug, Clone)]
pub enum ConstantKind {
    Enclosure(Interval),
    Int(Integer),
}

impl ConstantKind {
    pub fn display(&self) -> String {
        match self {
            ConstantKind::Enclosure(iv) => iv.to_decimal_question(),
            ConstantKind::Int(i) => i.to_string(),
        }
    }
}

/// Ordered collection of the constants a stage produced.
#[derive(Debug, Clone, Default)]
pub struct ConstantSet {
    entries: Vec<ConstantValue>,
}

impl ConstantSet {
    fn push_interval(&mut self, name: &str, lemma: &'static str, value: &Interval) {
        self.entries.push(ConstantValue {
            name: name.to_string(),
            value: ConstantKind::Enclosure(value.clone()),
            lemma,
        });
    }

    fn push_int(&mut self, name: &str, lemma: &'static str, value: &Integer) {
        self.entries.push(ConstantValue {
            name: name.to_string(),
            value: ConstantKind::Int(value.clone()),
            lemma,
        });
    }

    fn push_u64(&mut self, name: &str, lemma: &'static str, value: u64) {
        self.push_int(name, lemma, &Integer::from(value));
    }

    pub fn get(&self, name: &str) -> Option<&ConstantKind> {
        self.entries
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.value)
    }

    /// Overwrites a named constant; used by mutation-style tests.
    /// Returns false when the name is absent.
    pub fn replace_value(&mut self, name: &str, value: ConstantKind) -> bool {
        match self.entries.iter_mut().find(|c| c.name == name) {
            Some(entry) => {
                entry.value = value;
                true
            }
            None => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &ConstantValue> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The shape of a verifiable inequality about `ell_n`.
///
/// The tau forms compare a bound on `tau_n` against the table through
/// the identity `tau_n = 1 - ell_n / (n rho_n)`, so every form reduces
/// to a certified comparison between the integer `ell_n` and an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundForm {
    /// `ell_n > c1 n log n`
    FirstLower,
    /// `tau_n < (1/c1)((llog n + c2)/log n + c3 (llog n / log n)^2)`
    TauUpper,
    /// `ell_n < n (log n + (llog^2/2 + c2 llog + c4)/c1)`
    EllUpper,
    /// `tau_n > (llog n - c5)/log n - c6 llog^3 / log^2`
    TauLower,
    /// `ell_n > n (log n + llog^2/2 - c7 llog - c8)`
    SecondLower,
    /// `ell_n > n log n`
    ThmLower1,
    /// `ell_n > n (log n + llog^2/2 - llog - c8)`
    ThmLower2,
    /// `ell_n < n (log n + llog^2/2 + 1)`
    ThmUpper1,
    /// `ell_n < n (log n + llog^2/2 + c2 llog + c4)`
    ThmUpper2,
}

impl BoundForm {
    pub fn id(self) -> &'static str {
        match self {
            BoundForm::FirstLower => "first_lower",
            BoundForm::TauUpper => "tau_upper",
            BoundForm::EllUpper => "ell_upper",
            BoundForm::TauLower => "tau_lower",
            BoundForm::SecondLower => "second_lower",
            BoundForm::ThmLower1 => "thm_lower_1",
            BoundForm::ThmLower2 => "thm_lower_2",
            BoundForm::ThmUpper1 => "thm_upper_1",
            BoundForm::ThmUpper2 => "thm_upper_2",
        }
    }

    pub fn from_id(id: &str) -> Option<BoundForm> {
        Some(match id {
            "first_lower" => BoundForm::FirstLower,
            "tau_upper" => BoundForm::TauUpper,
            "ell_upper" => BoundForm::EllUpper,
            "tau_lower" => BoundForm::TauLower,
            "second_lower" => BoundForm::SecondLower,
            "thm_lower_1" => BoundForm::ThmLower1,
            "thm_lower_2" => BoundForm::ThmLower2,
            "thm_upper_1" => BoundForm::ThmUpper1,
            "thm_upper_2" => BoundForm::ThmUpper2,
            _ => return None,
        })
    }

    /// Claim direction: does the statement assert `ell_n` above or below
    /// the evaluated side?
    pub fn is_lower(self) -> bool {
        matches!(
            self,
            BoundForm::FirstLower
                | BoundForm::TauUpper
                | BoundForm::SecondLower
                | BoundForm::ThmLower1
                | BoundForm::ThmLower2
        )
    }

    /// Smallest n at which the right-hand side is well-defined
    /// (forms touching `llog n` need n >= 3).
    pub fn min_n(self) -> u64 {
        match self {
            BoundForm::FirstLower | BoundForm::ThmLower1 => 1,
            _ => 3,
        }
    }

    /// Tau forms additionally need `rho_n` from a stats context.
    pub fn needs_rho(self) -> bool {
        matches!(self, BoundForm::TauUpper | BoundForm::TauLower)
    }
}

/// A concrete inequality claim: form + constants + first index where it
/// is asserted to hold.
#[derive(Debug, Clone)]
pub struct BoundStatement {
    pub form: BoundForm,
    pub round: StageLabel,
    pub valid_from: u64,
    pub c1: Option<Interval>,
    pub c2: Option<Interval>,
    pub c3: Option<Interval>,
    pub c4: Option<Interval>,
    pub c5: Option<Interval>,
    pub c6: Option<Interval>,
    pub c7: Option<Interval>,
    pub c8: Option<Interval>,
}

impl BoundStatement {
    fn bare(form: BoundForm, round: StageLabel, valid_from: u64) -> Self {
        BoundStatement {
            form,
            round,
            valid_from,
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

    /// Right-hand side of the comparison against `ell_n`, as a certified
    /// enclosure. `ln_n` and `llog_n` are enclosures of `log n` and
    /// `log log n`; `rho_n` is required exactly when `needs_rho()`.
    pub fn rhs(
        &self,
        n: u64,
        ln_n: &Interval,
        llog_n: Option<&Interval>,
        rho_n: Option<&Interval>,
    ) -> std::result::Result<Interval, IntervalError> {
        let prec = ln_n.precision();
        let nv = Interval::from_u64(n, prec);
        let need = |c: &Option<Interval>, name: &'static str| {
            c.clone().ok_or(IntervalError::MissingParameter(name))
        };
        let llog = || llog_n.cloned().ok_or(IntervalError::MissingParameter("llog"));
        match self.form {
            BoundForm::ThmLower1 => nv.mul(ln_n),
            BoundForm::FirstLower => need(&self.c1, "c1")?.mul(&nv)?.mul(ln_n),
            BoundForm::ThmUpper1 => {
                let ll = llog()?;
                let half_sq = ll.pow_int(2)?.div(&Interval::from_u64(2, prec))?;
                nv.mul(&ln_n.add(&half_sq).add(&Interval::one(prec)))
            }
            BoundForm::EllUpper | BoundForm::ThmUpper2 => {
                let ll = llog()?;
                let half_sq = ll.pow_int(2)?.div(&Interval::from_u64(2, prec))?;
                let c2 = need(&self.c2, "c2")?;
                let c4 = need(&self.c4, "c4")?;
                let mut extra = half_sq.add(&c2.mul(&ll)?).add(&c4);
                if self.form == BoundForm::EllUpper {
                    extra = extra.div(&need(&self.c1, "c1")?)?;
                }
                nv.mul(&ln_n.add(&extra))
            }
            BoundForm::SecondLower | BoundForm::ThmLower2 => {
                let ll = llog()?;
                let half_sq = ll.pow_int(2)?.div(&Interval::from_u64(2, prec))?;
                let c7_ll = match self.form {
                    BoundForm::SecondLower => need(&self.c7, "c7")?.mul(&ll)?,
                    _ => ll.clone(),
                };
                let c8 = need(&self.c8, "c8")?;
                nv.mul(&ln_n.add(&half_sq).sub(&c7_ll).sub(&c8))
            }
            BoundForm::TauUpper => {
                // ell_n > n rho_n (1 - R) with
                // R = (1/c1)((llog + c2)/log + c3 (llog/log)^2)
                let ll = llog()?;
                let rho = rho_n.ok_or(IntervalError::MissingParameter("rho_n"))?;
                let c1 = need(&self.c1, "c1")?;
                let c2 = need(&self.c2, "c2")?;
                let c3 = need(&self.c3, "c3")?;
                let ratio = ll.div(ln_n)?;
                let r = ll
                    .add(&c2)
                    .div(ln_n)?
                    .add(&c3.mul(&ratio.pow_int(2)?)?)
                    .div(&c1)?;
                nv.mul(rho)?.mul(&Interval::one(prec).sub(&r))
            }
            BoundForm::TauLower => {
                // ell_n < n rho_n (1 - R) with
                // R = (llog - c5)/log - c6 llog^3/log^2
                let ll = llog()?;
                let rho = rho_n.ok_or(IntervalError::MissingParameter("rho_n"))?;
                let c5 = need(&self.c5, "c5")?;
                let c6 = need(&self.c6, "c6")?;
                let r = ll.sub(&c5).div(ln_n)?.sub(
                    &c6.mul(&ll.pow_int(3)?)?.div(&ln_n.pow_int(2)?)?,
                );
                nv.mul(rho)?.mul(&Interval::one(prec).sub(&r))
            }
        }
    }
}

/// Output of the first-lower-bound derivation.
#[derive(Debug, Clone)]
pub struct FirstLowerConstants {
    pub n0: u64,
    pub c0: Interval,
    pub c1: Interval,
    pub n1: u64,
}

/// `c0 = varrho_{n0} + gamma + 1 - 0.542/n0`, `c1 = 1 - e^{-c0}`,
/// `n1 = ceil(e^{c0} n0)`.
pub fn derive_first_lower(ctx: &StatsContext, n0: u64) -> Result<FirstLowerConstants> {
    const STAGE: &str = "first_lower_bound";
    const LEMMA: &str = "first_lower_bound";
    if n0 < 2 {
        return Err(PipelineError::HypothesisViolation {
            stage: STAGE,
            lemma: LEMMA,
            condition: format!("n0 >= 2 required, got {n0}"),
        });
    }
    let prec = ctx.precision();
    let varrho = at(STAGE, ctx.varrho(n0))?;
    let corr = Interval::from_rational(&Rational::from((271u32, 500u32)), prec); // 0.542
    let c0 = varrho
        .add(&Interval::euler_gamma(prec))
        .add(&Interval::one(prec))
        .sub(&ati(STAGE, corr.div(&Interval::from_u64(n0, prec)))?);
    let c1 = Interval::one(prec).sub(&c0.neg().exp());
    let n1_iv = ati(STAGE, c0.exp().mul(&Interval::from_u64(n0, prec)))?;
    let n1 = to_u64(STAGE, "n1", ati(STAGE, n1_iv.ceil_hi())?)?;
    Ok(FirstLowerConstants {
        n0,
        c0,
        c1,
        n1,
    })
}

/// Output of a finite-range application: `ell_n > n log n` certified for
/// all n in `[m1, m2]` (possibly empty, flagged).
#[derive(Debug, Clone)]
pub struct FiniteRange {
    pub n0: u64,
    pub c0: Interval,
    pub t: Interval,
    pub m1: Integer,
    pub m2: Integer,
    pub empty: bool,
}

/// `m1 = ceil(e^{c0 t} n0)`, `m2 = floor(exp(c0 (1-t)(e^{c0 t} - 1)))`,
/// with `t` defaulting to the `m2`-maximizing choice
/// `t = (W(e^{1 - c0}) + c0 - 1)/c0`.
pub fn finite_range(
    ctx: &StatsContext,
    n0: u64,
    t: Option<Interval>,
) -> Result<FiniteRange> {
    const STAGE: &str = "finite_range";
    const LEMMA: &str = "finite_range";
    let prec = ctx.precision();
    let FirstLowerConstants { c0, .. } = derive_first_lower(ctx, n0)?;
    let one = Interval::one(prec);
    let t = match t {
        Some(t) => {
            if !(*t.hi() <= 1) {
                return Err(PipelineError::HypothesisViolation {
                    stage: STAGE,
                    lemma: LEMMA,
                    condition: format!("t <= 1 required, got upper bound {}", t.hi()),
                });
            }
            t
        }
        None => {
            let w = ati(STAGE, lambert_w(&one.sub(&c0).exp()))?;
            ati(STAGE, w.add(&c0).sub(&one).div(&c0))?
        }
    };
    let e_c0t = ati(STAGE, c0.mul(&t))?.exp();
    let m1_iv = ati(STAGE, e_c0t.mul(&Interval::from_u64(n0, prec)))?;
    // m1 starts the claimed range: round up; m2 ends it: round down
    let m1 = ati(STAGE, m1_iv.ceil_hi())?;
    let exponent = ati(
        STAGE,
        ati(STAGE, c0.mul(&one.sub(&t)))?.mul(&e_c0t.sub(&one)),
    )?;
    let m2 = ati(STAGE, exponent.exp().floor_lo())?;
    let empty = m1 > m2;
    Ok(FiniteRange {
        n0,
        c0,
        t,
        m1,
        m2,
        empty,
    })
}

#[derive(Debug, Clone)]
pub struct TauUpperConstants {
    pub n2: u64,
    pub c2: Interval,
    pub c3: Interval,
}

/// `c3` of the omega-sum estimate at reference index `n_ref`:
/// `(-log(1-y) - y)/y^2 + (log n)^2/(n (llog n)^2)` with `y = llog n / log n`.
fn c3_at(stage: &'static str, n_ref: u64, prec: u32) -> Result<Interval> {
    let n = Interval::from_u64(n_ref, prec);
    let ln = ati(stage, n.ln())?;
    let lln = ati(stage, ln.ln())?;
    let y = ati(stage, lln.div(&ln))?;
    let one = Interval::one(prec);
    let main = ati(
        stage,
        ati(stage, one.sub(&y).ln())?
            .neg()
            .sub(&y)
            .div(&ati(stage, y.pow_int(2))?),
    )?;
    let tail = ati(
        stage,
        ati(stage, ln.pow_int(2))?.div(&ati(
            stage,
            n.mul(&ati(stage, lln.pow_int(2))?),
        )?),
    )?;
    Ok(main.add(&tail))
}

/// Gate: `c1 in [0.99, 1]`, certified.
fn require_c1_range(stage: &'static str, lemma: &'static str, c1: &Interval) -> Result<()> {
    let low = Rational::from((99u32, 100u32));
    if !(*c1.lo() >= low) || !(*c1.hi() <= 1) {
        return Err(PipelineError::HypothesisViolation {
            stage,
            lemma,
            condition: format!("c1 in [0.99, 1] required, got {}", c1),
        });
    }
    Ok(())
}

/// Tau upper bound constants from `(c1, n1)`:
/// `n2 = ceil(n1 log n1)`, `c2 = -log(1/c1) + (1 - llog n1/log n1)^{-1}`,
/// `c3` at `n2`. Requires `c1 in [0.99, 1]` and `n1 >= 10771`.
pub fn derive_tau_upper(
    ctx: &StatsContext,
    c1: &Interval,
    n1: u64,
) -> Result<TauUpperConstants> {
    const STAGE: &str = "tau_upper_bound";
    const LEMMA: &str = "tau_upper_bound";
    require_c1_range(STAGE, LEMMA, c1)?;
    if n1 < 10771 {
        return Err(PipelineError::HypothesisViolation {
            stage: STAGE,
            lemma: LEMMA,
            condition: format!("n1 >= 10771 required, got {n1}"),
        });
    }
    let prec = ctx.precision();
    let n1v = Interval::from_u64(n1, prec);
    let ln1 = ati(STAGE, n1v.ln())?;
    let n2_iv = ati(STAGE, n1v.mul(&ln1))?;
    let n2 = to_u64(STAGE, "n2", ati(STAGE, n2_iv.ceil_hi())?)?;
    // c2 = log c1 + 1/(1 - llog n1 / log n1)
    let lln1 = ati(STAGE, ln1.ln())?;
    let one = Interval::one(prec);
    let c2 = ati(STAGE, c1.ln())?.add(&ati(
        STAGE,
        one.div(&one.sub(&ati(STAGE, lln1.div(&ln1))?)),
    )?);
    let c3 = c3_at(STAGE, n2, prec)?;
    Ok(TauUpperConstants { n2, c2, c3 })
}

#[derive(Debug, Clone)]
pub struct EllUpperConstants {
    pub r1: Interval,
    pub r2: Interval,
    pub c4: Interval,
}

/// Ell upper bound constants at `n2`, including the closed-form tail
/// integral. Requires `n2 > e^e` and `ell_{n2}` within the table.
pub fn derive_ell_upper(
    ctx: &StatsContext,
    c1: &Interval,
    c2: &Interval,
    c3: &Interval,
    n2: u64,
) -> Result<EllUpperConstants> {
    const STAGE: &str = "ell_upper_bound";
    const LEMMA: &str = "ell_upper_bound";
    let prec = ctx.precision();
    let e_to_e = Interval::napier_e(prec).exp();
    if !Interval::from_u64(n2, prec).certainly_gt(&e_to_e) {
        return Err(PipelineError::HypothesisViolation {
            stage: STAGE,
            lemma: LEMMA,
            condition: format!("n2 > e^e required, got {n2}"),
        });
    }
    let ell_n2 = ctx
        .table()
        .get(n2 as usize)
        .ok_or(PipelineError::Stats {
            stage: STAGE,
            source: StatsError::OutOfTable {
                needed: n2,
                have: ctx.table().len(),
            },
        })?;
    let one = Interval::one(prec);
    // r1 = (1 - 1/ell_{n2})^{-1} = ell/(ell - 1), exact rational
    let r1 = Interval::from_rational(
        &Rational::from((Integer::from(ell_n2), Integer::from(ell_n2 - 1))),
        prec,
    );
    // r2 = (1 - X)^{-1} with X the tau upper expression at n2
    let n2v = Interval::from_u64(n2, prec);
    let ln2 = ati(STAGE, n2v.ln())?;
    let lln2 = ati(STAGE, ln2.ln())?;
    let ratio = ati(STAGE, lln2.div(&ln2))?;
    let x = ati(
        STAGE,
        ati(STAGE, lln2.add(c2).div(&ln2))?
            .add(&ati(STAGE, c3.mul(&ati(STAGE, ratio.pow_int(2))?))?)
            .div(c1),
    )?;
    let denom = one.sub(&x);
    if !(*denom.lo() > 0) {
        return Err(PipelineError::HypothesisViolation {
            stage: STAGE,
            lemma: LEMMA,
            condition: "tau upper expression at n2 must stay certifiably below 1".into(),
        });
    }
    let r2 = ati(STAGE, one.div(&denom))?;

    let varrho_n2 = at(STAGE, ctx.varrho(n2))?;
    let n2m1 = Interval::from_u64(n2 - 1, prec);
    let ln2m1 = ati(STAGE, n2m1.ln())?;
    let lln2m1 = ati(STAGE, ln2m1.ln())?;
    let gamma = Interval::euler_gamma(prec);
    let half_sq = ati(
        STAGE,
        ati(STAGE, lln2m1.pow_int(2))?.div(&Interval::from_u64(2, prec)),
    )?;
    let params = TailParams {
        c1: Some(c1.clone()),
        c2: Some(c2.clone()),
        c3: Some(c3.clone()),
        r2: Some(r2.clone()),
    };
    let integral = ati(
        STAGE,
        tail_integral(TailIntegralKind::MixedC4Integrand, &ln2m1, &params),
    )?;
    let small = ati(
        STAGE,
        ati(STAGE, r1.mul(&r2))?.div(&ati(STAGE, n2m1.mul(&ln2))?),
    )?;
    let c4 = ati(STAGE, c1.mul(&varrho_n2.add(&gamma).add(&one)))?
        .sub(&half_sq)
        .sub(&ati(STAGE, c2.mul(&lln2m1))?)
        .add(&small)
        .add(&integral);
    Ok(EllUpperConstants { r1, r2, c4 })
}

#[derive(Debug, Clone)]
pub struct TauLowerConstants {
    pub n3: u64,
    pub c5: Interval,
    pub c6: Interval,
    /// `c3` re-evaluated at `n3`; feeds `c6`.
    pub c3_n3: Interval,
}

/// Tau lower bound constants: `n3 = ceil(n2 log n2)`, `c5 = log(1/c1)`,
/// and the two-line `c6` expression (with `c3` taken at `n3`).
/// Requires `c1 in [0.99, 1]`, `c2, c4 > 0` and `n2 >= 10771`.
pub fn derive_tau_lower(
    ctx: &StatsContext,
    c1: &Interval,
    c2: &Interval,
    c4: &Interval,
    n2: u64,
) -> Result<TauLowerConstants> {
    const STAGE: &str = "tau_lower_bound";
    const LEMMA: &str = "tau_lower_bound";
    require_c1_range(STAGE, LEMMA, c1)?;
    for (name, c) in [("c2", c2), ("c4", c4)] {
        if !(*c.lo() > 0) {
            return Err(PipelineError::HypothesisViolation {
                stage: STAGE,
                lemma: LEMMA,
                condition: format!("{name} > 0 required, got {c}"),
            });
        }
    }
    if n2 < 10771 {
        return Err(PipelineError::HypothesisViolation {
            stage: STAGE,
            lemma: LEMMA,
            condition: format!("n2 >= 10771 required, got {n2}"),
        });
    }
    let prec = ctx.precision();
    let n2v = Interval::from_u64(n2, prec);
    let ln2 = ati(STAGE, n2v.ln())?;
    let n3 = to_u64(
        STAGE,
        "n3",
        ati(STAGE, ati(STAGE, n2v.mul(&ln2))?.ceil_hi())?,
    )?;
    // c5 = log(1/c1) = -log c1; exactly zero when c1 is exactly one
    let c5 = ati(STAGE, c1.ln())?.neg();
    let c3_n3 = c3_at(STAGE, n3, prec)?;
    let n3v = Interval::from_u64(n3, prec);
    let ln3 = ati(STAGE, n3v.ln())?;
    let lln3 = ati(STAGE, ln3.ln())?;
    let one = Interval::one(prec);
    let two = Interval::from_u64(2, prec);
    // first line: (1/c1)(1/2 + c2/llog n3 + c4/llog^2 n3)(1 - llog n3/log n3)^{-1}
    let half = ati(STAGE, one.div(&two))?;
    let lln3_sq = ati(STAGE, lln3.pow_int(2))?;
    let paren = half
        .add(&ati(STAGE, c2.div(&lln3))?)
        .add(&ati(STAGE, c4.div(&lln3_sq))?);
    let denom = one.sub(&ati(STAGE, lln3.div(&ln3))?);
    let first = ati(STAGE, paren.div(&denom))?;
    let first = ati(STAGE, first.div(c1))?;
    // second line: (1/(2 c1^2))(1/llog n3 + 2 c3/log n3 + c3^2 llog n3/log^2 n3)
    let ln3_sq = ati(STAGE, ln3.pow_int(2))?;
    let c3_sq = ati(STAGE, c3_n3.pow_int(2))?;
    let bracket = ati(STAGE, one.div(&lln3))?
        .add(&ati(STAGE, ati(STAGE, two.mul(&c3_n3))?.div(&ln3))?)
        .add(&ati(STAGE, ati(STAGE, c3_sq.mul(&lln3))?.div(&ln3_sq))?);
    let c1_sq = ati(STAGE, c1.pow_int(2))?;
    let second = ati(STAGE, bracket.div(&ati(STAGE, two.mul(&c1_sq))?))?;
    let c6 = first.add(&second);
    Ok(TauLowerConstants {
        n3,
        c5,
        c6,
        c3_n3,
    })
}

#[derive(Debug, Clone)]
pub struct SecondLowerConstants {
    pub r3: Interval,
    pub r4: Interval,
    pub c7: Interval,
    pub c8: Interval,
}

/// Second lower bound constants, including the cubed-log tail integral.
/// Requires `n3 > e^{e^2}` and `varrho_{n3}` within the warmed cache.
/// `c3` here is the tau-upper `c3` (at `n2`), matching the inequality
/// the derivation consumes.
pub fn derive_second_lower(
    ctx: &StatsContext,
    c1: &Interval,
    c2: &Interval,
    c3: &Interval,
    c5: &Interval,
    c6: &Interval,
    n3: u64,
) -> Result<SecondLowerConstants> {
    const STAGE: &str = "second_lower_bound";
    const LEMMA: &str = "second_lower_bound";
    let prec = ctx.precision();
    let e_sq = Interval::napier_e(prec).pow_int(2).map_err(|source| {
        PipelineError::Interval {
            stage: STAGE,
            source,
        }
    })?;
    if !Interval::from_u64(n3, prec).certainly_gt(&e_sq.exp()) {
        return Err(PipelineError::HypothesisViolation {
            stage: STAGE,
            lemma: LEMMA,
            condition: format!("n3 > e^(e^2) required, got {n3}"),
        });
    }
    let varrho_n3 = at(STAGE, ctx.varrho(n3))?;
    let one = Interval::one(prec);
    let two = Interval::from_u64(2, prec);
    let n3v = Interval::from_u64(n3, prec);
    let ln3 = ati(STAGE, n3v.ln())?;
    let lln3 = ati(STAGE, ln3.ln())?;
    let n3m1 = Interval::from_u64(n3 - 1, prec);
    let ln3m1 = ati(STAGE, n3m1.ln())?;
    let lln3m1 = ati(STAGE, ln3m1.ln())?;
    let gamma = Interval::euler_gamma(prec);
    let corr = Interval::from_rational(&Rational::from((271u32, 500u32)), prec);
    let tail = ati(
        STAGE,
        tail_integral(
            TailIntegralKind::CubedLogOverSquare,
            &ln3m1,
            &TailParams::default(),
        ),
    )?;
    let body = varrho_n3
        .neg()
        .sub(&gamma)
        .sub(&one)
        .add(&ati(STAGE, corr.div(&n3v))?)
        .add(&ati(STAGE, ati(STAGE, lln3.pow_int(2))?.div(&two))?)
        .sub(&ati(STAGE, c5.mul(&lln3m1))?)
        .add(&ati(STAGE, c6.mul(&tail))?);
    let r3 = Interval::zero(prec).max(&body);

    // r4 = c2 + 27 e^{c2/3 - 3} / 2 + c3 (u + u^2/2), u = (llog n3)^2/log n3
    let u = ati(STAGE, ati(STAGE, lln3.pow_int(2))?.div(&ln3))?;
    let exp_term = ati(STAGE, c2.div(&Interval::from_u64(3, prec)))?
        .sub(&Interval::from_u64(3, prec))
        .exp();
    let mid_num = ati(STAGE, Interval::from_u64(27, prec).mul(&exp_term))?;
    let middle = ati(STAGE, mid_num.div(&two))?;
    let u_part = u.add(&ati(STAGE, ati(STAGE, u.pow_int(2))?.div(&two))?);
    let r4 = c2.add(&middle).add(&ati(STAGE, c3.mul(&u_part))?);

    let c7 = c5.add(&ati(STAGE, one.div(c1))?);
    let c8 = r3.add(&ati(STAGE, r4.div(c1))?);
    Ok(SecondLowerConstants { r3, r4, c7, c8 })
}

/// The bootstrap threshold: smallest integer past which
/// `llog^2/2 - c7 llog - c8 >= 0`, i.e.
/// `n4 = ceil(exp(exp(c7 + sqrt(c7^2 + 2 c8))))`.
///
/// When the double exponential is not representable the inner exponent
/// is kept symbolically.
#[derive(Debug, Clone)]
pub enum BootstrapThreshold {
    Value(Integer),
    /// `n4 = exp(exp(inner))`, inner certified.
    Symbolic { inner: Interval },
}

pub fn bootstrap_threshold(c7: &Interval, c8: &Interval) -> Result<BootstrapThreshold> {
    const STAGE: &str = "bootstrapping";
    let prec = c7.precision().max(c8.precision());
    let two = Interval::from_u64(2, prec);
    let disc = ati(
        STAGE,
        ati(STAGE, c7.pow_int(2))?.add(&ati(STAGE, two.mul(c8))?).sqrt(),
    )?;
    let inner = c7.add(&disc);
    let outer = inner.exp();
    let n4 = outer.exp();
    if n4.is_finite() {
        Ok(BootstrapThreshold::Value(ati(STAGE, n4.ceil_hi())?))
    } else {
        Ok(BootstrapThreshold::Symbolic { inner })
    }
}

/// Plain-text `key=value` configuration for the pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineConfig {
    pub table_path: PathBuf,
    pub n0_first: u64,
    pub n1_first: u64,
    pub n1_second: u64,
    pub n1_third: u64,
    pub precision_bits: u32,
    pub output_dir: PathBuf,
    pub workers: usize,
    pub verbosity: u32,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            table_path: PathBuf::from("lucky.lukt"),
            // smallest first-lower n0 that pushes c1 above the 0.99 gate
            // while keeping the derived n1 within a desk-scale table
            n0_first: 3000,
            // the minimum the tau-upper derivation accepts
            n1_first: 10771,
            n1_second: 10771,
            n1_third: 10771,
            // significand bits; keeps >= 128 fractional bits for every
            // magnitude the pipeline touches
            precision_bits: 192,
            output_dir: PathBuf::from("."),
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            verbosity: 1,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected key=value, got {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for {key}: {detail}")]
    BadValue {
        line: usize,
        key: String,
        detail: String,
    },
    #[error("precision_bits must be >= 64, got {0}")]
    PrecisionTooLow(u32),
    #[error("workers must be >= 1")]
    NoWorkers,
}

impl PipelineConfig {
    pub fn parse(text: &str) -> std::result::Result<Self, ConfigError> {
        let mut cfg = PipelineConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let (key, value) = s.split_once('=').ok_or_else(|| ConfigError::Malformed {
                line,
                text: s.to_string(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |detail: String| ConfigError::BadValue {
                line,
                key: key.to_string(),
                detail,
            };
            match key {
                "table_path" => cfg.table_path = PathBuf::from(value),
                "output_dir" => cfg.output_dir = PathBuf::from(value),
                "n0_first" => cfg.n0_first = value.parse().map_err(|e| bad(format!("{e}")))?,
                "n1_first" => cfg.n1_first = value.parse().map_err(|e| bad(format!("{e}")))?,
                "n1_second" => cfg.n1_second = value.parse().map_err(|e| bad(format!("{e}")))?,
                "n1_third" => cfg.n1_third = value.parse().map_err(|e| bad(format!("{e}")))?,
                "precision_bits" => {
                    cfg.precision_bits = value.parse().map_err(|e| bad(format!("{e}")))?
                }
                "workers" => cfg.workers = value.parse().map_err(|e| bad(format!("{e}")))?,
                "verbosity" => cfg.verbosity = value.parse().map_err(|e| bad(format!("{e}")))?,
                _ => {
                    return Err(ConfigError::UnknownKey {
                        line,
                        key: key.to_string(),
                    })
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> std::result::Result<Self, std::io::Error> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }

    pub fn validate(&self) -> std::result::Result<(), ConfigError> {
        if self.precision_bits < 64 {
            return Err(ConfigError::PrecisionTooLow(self.precision_bits));
        }
        if self.workers == 0 {
            return Err(ConfigError::NoWorkers);
        }
        Ok(())
    }
}

/// Everything one stage contributes.
#[derive(Debug, Clone)]
pub struct StageOutput {
    pub stage: StageLabel,
    pub constants: ConstantSet,
    pub statements: Vec<BoundStatement>,
}

/// Result of a full pipeline run.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub stages: Vec<StageOutput>,
    pub bootstrap: BootstrapSummary,
}

/// How the bootstrap stage stitched the full range together.
#[derive(Debug, Clone)]
pub struct BootstrapSummary {
    pub n4: BootstrapThreshold,
    pub ranges: Vec<FiniteRange>,
    /// Head range `[1, head_to]` that must be checked directly.
    pub head_to: u64,
    /// Certified: consecutive pieces overlap and `n4` lands inside the
    /// last finite range, so the lower bound claim covers all n >= 1
    /// (granted the second-lower statement past the table horizon).
    pub chain_closed: bool,
}

impl PipelineOutput {
    pub fn statements(&self) -> impl Iterator<Item = &BoundStatement> {
        self.stages.iter().flat_map(|s| s.statements.iter())
    }

    /// Compares every constant against a reference run; returns the
    /// names that are no longer consistent (disjoint enclosures or
    /// different integers). A constant altered after the run - by a
    /// file corruption or a deliberate mutation - is caught here even
    /// when the altered statement still happens to hold over the table.
    pub fn divergent_constants(&self, reference: &PipelineOutput) -> Vec<String> {
        let mut bad = Vec::new();
        for (mine, theirs) in self.stages.iter().zip(reference.stages.iter()) {
            for (a, b) in mine.constants.iter().zip(theirs.constants.iter()) {
                let tag = format!("{}/{}", mine.stage.as_str(), a.name);
                if a.name != b.name {
                    bad.push(tag);
                    continue;
                }
                let ok = match (&a.value, &b.value) {
                    (ConstantKind::Enclosure(x), ConstantKind::Enclosure(y)) => x.intersects(y),
                    (ConstantKind::Int(x), ConstantKind::Int(y)) => x == y,
                    _ => false,
                };
                if !ok {
                    bad.push(tag);
                }
            }
            if mine.constants.len() != theirs.constants.len() {
                bad.push(format!("{}/<arity>", mine.stage.as_str()));
            }
        }
        bad
    }
}

/// Constants and statements of one tau-upper/ell-upper/tau-lower/
/// second-lower round.
struct RoundOutput {
    constants: ConstantSet,
    statements: Vec<BoundStatement>,
    c7: Interval,
    c8: Interval,
}

/// Runs one full round at the given `c1`; `full` stops after the ell
/// upper bound when false (the third half-round).
fn run_round(
    ctx: &mut StatsContext,
    label: StageLabel,
    c1: &Interval,
    n1: u64,
    full: bool,
    emit_first_lower: bool,
) -> Result<RoundOutput> {
    let mut constants = ConstantSet::default();
    let mut statements = Vec::new();
    constants.push_interval("c1", "first_lower_bound", c1);
    constants.push_u64("n1", "round_configuration", n1);
    if emit_first_lower {
        let mut st = BoundStatement::bare(BoundForm::FirstLower, label, n1);
        st.c1 = Some(c1.clone());
        statements.push(st);
    }

    let tu = derive_tau_upper(ctx, c1, n1)?;
    constants.push_u64("n2", "tau_upper_bound", tu.n2);
    constants.push_interval("c2", "tau_upper_bound", &tu.c2);
    constants.push_interval("c3", "tau_upper_bound", &tu.c3);
    let mut st = BoundStatement::bare(BoundForm::TauUpper, label, tu.n2);
    st.c1 = Some(c1.clone());
    st.c2 = Some(tu.c2.clone());
    st.c3 = Some(tu.c3.clone());
    statements.push(st);

    at("ell_upper_bound", ctx.warm(tu.n2))?;
    let eu = derive_ell_upper(ctx, c1, &tu.c2, &tu.c3, tu.n2)?;
    constants.push_interval("r1", "ell_upper_bound", &eu.r1);
    constants.push_interval("r2", "ell_upper_bound", &eu.r2);
    constants.push_interval("c4", "ell_upper_bound", &eu.c4);
    let upper_form = if full {
        BoundForm::EllUpper
    } else {
        BoundForm::ThmUpper2
    };
    let mut st = BoundStatement::bare(upper_form, label, tu.n2);
    st.c1 = Some(c1.clone());
    st.c2 = Some(tu.c2.clone());
    st.c4 = Some(eu.c4.clone());
    statements.push(st);

    if !full {
        return Ok(RoundOutput {
            constants,
            statements,
            c7: Interval::zero(ctx.precision()),
            c8: Interval::zero(ctx.precision()),
        });
    }

    let tl = derive_tau_lower(ctx, c1, &tu.c2, &eu.c4, tu.n2)?;
    constants.push_u64("n3", "tau_lower_bound", tl.n3);
    constants.push_interval("c5", "tau_lower_bound", &tl.c5);
    constants.push_interval("c6", "tau_lower_bound", &tl.c6);
    constants.push_interval("c3_n3", "tau_lower_bound", &tl.c3_n3);
    let mut st = BoundStatement::bare(BoundForm::TauLower, label, tl.n3);
    st.c5 = Some(tl.c5.clone());
    st.c6 = Some(tl.c6.clone());
    statements.push(st);

    at("second_lower_bound", ctx.warm(tl.n3))?;
    let sl = derive_second_lower(ctx, c1, &tu.c2, &tu.c3, &tl.c5, &tl.c6, tl.n3)?;
    constants.push_interval("r3", "second_lower_bound", &sl.r3);
    constants.push_interval("r4", "second_lower_bound", &sl.r4);
    constants.push_interval("c7", "second_lower_bound", &sl.c7);
    constants.push_interval("c8", "second_lower_bound", &sl.c8);
    // the second round's c7 is exactly one, which is the theorem shape
    let theorem_shape = sl.c7.is_exact() && *sl.c7.lo() == 1;
    let mut st = BoundStatement::bare(
        if theorem_shape {
            BoundForm::ThmLower2
        } else {
            BoundForm::SecondLower
        },
        label,
        tl.n3,
    );
    st.c7 = Some(sl.c7.clone());
    st.c8 = Some(sl.c8.clone());
    statements.push(st);

    Ok(RoundOutput {
        constants,
        statements,
        c7: sl.c7,
        c8: sl.c8,
    })
}

/// Executes the five stages in order over a warmed-up context.
pub fn run_pipeline(ctx: &mut StatsContext, config: &PipelineConfig) -> Result<PipelineOutput> {
    let prec = ctx.precision();
    let mut stages = Vec::new();

    // stage 1: first lower bound
    at("first_lower_bound", ctx.warm(config.n0_first))?;
    let fl = derive_first_lower(ctx, config.n0_first)?;
    let mut constants = ConstantSet::default();
    constants.push_u64("n0", "round_configuration", fl.n0);
    constants.push_interval("c0", "first_lower_bound", &fl.c0);
    constants.push_interval("c1", "first_lower_bound", &fl.c1);
    constants.push_u64("n1", "first_lower_bound", fl.n1);
    let mut st = BoundStatement::bare(BoundForm::FirstLower, StageLabel::FirstLowerBound, fl.n1);
    st.c1 = Some(fl.c1.clone());
    stages.push(StageOutput {
        stage: StageLabel::FirstLowerBound,
        constants,
        statements: vec![st],
    });

    // stage 2: first round, carried by the stage-1 c1 at the configured n1
    let round1 = run_round(
        ctx,
        StageLabel::FirstRound,
        &fl.c1,
        config.n1_first,
        true,
        true,
    )?;
    stages.push(StageOutput {
        stage: StageLabel::FirstRound,
        constants: round1.constants,
        statements: round1.statements,
    });

    // stage 3: bootstrapping
    let n4 = bootstrap_threshold(&round1.c7, &round1.c8)?;
    at("bootstrapping", ctx.warm(124_000.min(ctx.table().len() as u64)))?;
    let mut ranges = Vec::new();
    for n0 in [66u64, 124_000] {
        ranges.push(finite_range(ctx, n0, None)?);
    }
    let head_to = to_u64(
        "bootstrapping",
        "m1",
        Integer::from(&ranges[0].m1),
    )?;
    let chain_closed = {
        let pieces_overlap = ranges
            .windows(2)
            .all(|w| !w[0].empty && w[1].m1 <= Integer::from(&w[0].m2) + 1u32);
        let last_ok = match (&n4, ranges.last()) {
            (BootstrapThreshold::Value(n4), Some(last)) => !last.empty && *n4 <= last.m2,
            _ => false,
        };
        pieces_overlap && last_ok
    };
    let mut constants = ConstantSet::default();
    match &n4 {
        BootstrapThreshold::Value(v) => constants.push_int("n4", "bootstrapping", v),
        BootstrapThreshold::Symbolic { inner } => {
            constants.push_interval("n4_inner_exponent", "bootstrapping", inner)
        }
    }
    for r in &ranges {
        let tag = format!("_{}", r.n0);
        constants.push_interval(&format!("t{tag}"), "finite_range", &r.t);
        constants.push_int(&format!("m1{tag}"), "finite_range", &r.m1);
        constants.push_int(&format!("m2{tag}"), "finite_range", &r.m2);
    }
    let thm1 = BoundStatement::bare(BoundForm::ThmLower1, StageLabel::Bootstrapping, 1);
    stages.push(StageOutput {
        stage: StageLabel::Bootstrapping,
        constants,
        statements: vec![thm1],
    });

    // stage 4: second round, with c1 pinned to exactly one
    let one = Interval::one(prec);
    let round2 = run_round(
        ctx,
        StageLabel::SecondRound,
        &one,
        config.n1_second,
        true,
        false,
    )?;
    stages.push(StageOutput {
        stage: StageLabel::SecondRound,
        constants: round2.constants,
        statements: round2.statements,
    });

    // stage 5: third half-round, up to the ell upper bound
    let round3 = run_round(
        ctx,
        StageLabel::ThirdHalfRound,
        &one,
        config.n1_third,
        false,
        false,
    )?;
    stages.push(StageOutput {
        stage: StageLabel::ThirdHalfRound,
        constants: round3.constants,
        statements: round3.statements,
    });

    Ok(PipelineOutput {
        stages,
        bootstrap: BootstrapSummary {
            n4,
            ranges,
            head_to,
            chain_closed,
        },
    })
}
