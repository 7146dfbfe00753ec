//! Certified interval arithmetic over arbitrary-precision floats.
//!
//! Every operation rounds outward: the returned `[lo, hi]` contains the
//! exact real result whenever the inputs contain theirs. Endpoints are
//! MPFR floats, so directed rounding of the elementary functions (log,
//! exp, sqrt, powers) is inherited from MPFR's correct-rounding
//! guarantee.
//!
//! Invalid operations (division by an interval containing zero, log of a
//! non-positive interval, ...) return [`IntervalError`] instead of
//! producing NaN or silently widening.

mod special;

pub use special::{
    harmonic_sum, lambert_w, omega, tail_integral, tail_integrand_at, TailIntegralKind,
    TailParams,
};

use rug::float::{Constant, Round};
use rug::ops::{
    AddAssignRound, DivAssignRound, MulAssignRound, NegAssign, Pow, PowAssignRound,
    SubAssignRound,
};
use rug::{Float, Integer, Rational};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IntervalError {
    #[error("domain violation in {op}: {detail}")]
    DomainViolation { op: &'static str, detail: String },
    #[error("missing parameter {0} for tail integral")]
    MissingParameter(&'static str),
    #[error("{op} produced an invalid (NaN or disordered) result")]
    InvalidResult { op: &'static str },
}

type Result<T> = std::result::Result<T, IntervalError>;

/// A closed interval `[lo, hi]` of extended reals with `lo <= hi` and no
/// NaN endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

impl Interval {
    fn from_parts(op: &'static str, lo: Float, hi: Float) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(IntervalError::InvalidResult { op });
        }
        Ok(Interval { lo, hi })
    }

    /// Builds an interval from two floats, checking order and NaN-freeness.
    pub fn new(lo: Float, hi: Float) -> Result<Self> {
        Self::from_parts("new", lo, hi)
    }

    /// The exact point interval `[v, v]` (exact: u64 fits any precision
    /// of at least 64 bits; smaller precision rounds outward).
    pub fn from_u64(v: u64, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        Interval { lo, hi }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        Interval { lo, hi }
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        Interval { lo, hi }
    }

    /// Enclosure of the exact rational `num/den`.
    pub fn from_ratio(num: i64, den: u64, prec: u32) -> Result<Self> {
        if den == 0 {
            return Err(IntervalError::DomainViolation {
                op: "from_ratio",
                detail: "zero denominator".into(),
            });
        }
        let r = Rational::from((num, den));
        Ok(Self::from_rational(&r, prec))
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, r, Round::Down).0;
        let hi = Float::with_val_round(prec, r, Round::Up).0;
        Interval { lo, hi }
    }

    /// Exact point interval from an f64 (f64 values are dyadic, so this
    /// is exact at precision >= 53).
    pub fn from_f64(v: f64, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, v, Round::Down).0;
        let hi = Float::with_val_round(prec, v, Round::Up).0;
        Interval { lo, hi }
    }

    pub fn singleton(v: Float) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    /// Certified enclosure of the Euler-Mascheroni constant.
    pub fn euler_gamma(prec: u32) -> Self {
        let lo = Float::with_val_round(prec, Constant::Euler, Round::Down).0;
        let hi = Float::with_val_round(prec, Constant::Euler, Round::Up).0;
        Interval { lo, hi }
    }

    /// Certified enclosure of e.
    pub fn napier_e(prec: u32) -> Self {
        let mut lo = Float::with_val(prec, 1u32);
        lo.exp_round(Round::Down);
        let mut hi = Float::with_val(prec, 1u32);
        hi.exp_round(Round::Up);
        Interval { lo, hi }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_u64(0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_u64(1, prec)
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> Float {
        let mut w = self.hi.clone();
        w.sub_assign_round(&self.lo, Round::Up);
        w
    }

    pub fn contains_u64(&self, v: u64) -> bool {
        self.lo <= v && self.hi >= v
    }

    pub fn contains_f64(&self, v: f64) -> bool {
        self.lo <= v && self.hi >= v
    }

    pub fn contains(&self, v: &Float) -> bool {
        self.lo <= *v && self.hi >= *v
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && self.hi >= other.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Exact point interval test.
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// `true` iff every point of `self` is strictly above every point of
    /// `other` (certified strict comparison).
    pub fn certainly_gt(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt_u64(&self, v: u64) -> bool {
        self.lo > v
    }

    pub fn certainly_lt_u64(&self, v: u64) -> bool {
        self.hi < v
    }

    fn result_prec(&self, other: &Interval) -> u32 {
        self.precision().max(other.precision())
    }

    pub fn add(&self, other: &Interval) -> Self {
        let prec = self.result_prec(other);
        let mut lo = Float::with_val_round(prec, &self.lo, Round::Down).0;
        lo.add_assign_round(&other.lo, Round::Down);
        let mut hi = Float::with_val_round(prec, &self.hi, Round::Up).0;
        hi.add_assign_round(&other.hi, Round::Up);
        Interval { lo, hi }
    }

    pub fn sub(&self, other: &Interval) -> Self {
        let prec = self.result_prec(other);
        let mut lo = Float::with_val_round(prec, &self.lo, Round::Down).0;
        lo.sub_assign_round(&other.hi, Round::Down);
        let mut hi = Float::with_val_round(prec, &self.hi, Round::Up).0;
        hi.sub_assign_round(&other.lo, Round::Up);
        Interval { lo, hi }
    }

    pub fn neg(&self) -> Self {
        let mut lo = self.hi.clone();
        lo.neg_assign();
        let mut hi = self.lo.clone();
        hi.neg_assign();
        Interval { lo, hi }
    }

    pub fn mul(&self, other: &Interval) -> Result<Self> {
        let prec = self.result_prec(other);
        // fast path for the dominant case: both operands nonnegative
        if self.lo >= 0 && other.lo >= 0 {
            let mut lo = Float::with_val_round(prec, &self.lo, Round::Down).0;
            lo.mul_assign_round(&other.lo, Round::Down);
            let mut hi = Float::with_val_round(prec, &self.hi, Round::Up).0;
            hi.mul_assign_round(&other.hi, Round::Up);
            if lo.is_nan() || hi.is_nan() {
                return Err(IntervalError::DomainViolation {
                    op: "mul",
                    detail: "indeterminate product of 0 and infinity".into(),
                });
            }
            return Self::from_parts("mul", lo, hi);
        }
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let mut down = Float::with_val_round(prec, a, Round::Down).0;
            down.mul_assign_round(b, Round::Down);
            let mut up = Float::with_val_round(prec, a, Round::Up).0;
            up.mul_assign_round(b, Round::Up);
            if down.is_nan() || up.is_nan() {
                // 0 * inf; reachable only with infinite endpoints
                return Err(IntervalError::DomainViolation {
                    op: "mul",
                    detail: "indeterminate product of 0 and infinity".into(),
                });
            }
            lo = Some(match lo {
                Some(cur) => {
                    if down < cur {
                        down
                    } else {
                        cur
                    }
                }
                None => down,
            });
            hi = Some(match hi {
                Some(cur) => {
                    if up > cur {
                        up
                    } else {
                        cur
                    }
                }
                None => up,
            });
        }
        Self::from_parts("mul", lo.unwrap(), hi.unwrap())
    }

    pub fn div(&self, other: &Interval) -> Result<Self> {
        if other.contains_u64(0) {
            return Err(IntervalError::DomainViolation {
                op: "div",
                detail: format!("denominator {} contains zero", other.brief()),
            });
        }
        let prec = self.result_prec(other);
        // fast path: nonnegative numerator, strictly positive denominator
        if self.lo >= 0 && other.lo > 0 {
            let mut lo = Float::with_val_round(prec, &self.lo, Round::Down).0;
            lo.div_assign_round(&other.hi, Round::Down);
            let mut hi = Float::with_val_round(prec, &self.hi, Round::Up).0;
            hi.div_assign_round(&other.lo, Round::Up);
            if lo.is_nan() || hi.is_nan() {
                return Err(IntervalError::DomainViolation {
                    op: "div",
                    detail: "indeterminate quotient of infinities".into(),
                });
            }
            return Self::from_parts("div", lo, hi);
        }
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let mut down = Float::with_val_round(prec, a, Round::Down).0;
            down.div_assign_round(b, Round::Down);
            let mut up = Float::with_val_round(prec, a, Round::Up).0;
            up.div_assign_round(b, Round::Up);
            if down.is_nan() || up.is_nan() {
                return Err(IntervalError::DomainViolation {
                    op: "div",
                    detail: "indeterminate quotient of infinities".into(),
                });
            }
            lo = Some(match lo {
                Some(cur) => {
                    if down < cur {
                        down
                    } else {
                        cur
                    }
                }
                None => down,
            });
            hi = Some(match hi {
                Some(cur) => {
                    if up > cur {
                        up
                    } else {
                        cur
                    }
                }
                None => up,
            });
        }
        Self::from_parts("div", lo.unwrap(), hi.unwrap())
    }

    /// Integer power. Negative exponents require an interval not
    /// containing zero.
    pub fn pow_int(&self, k: i32) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one(self.precision()));
        }
        if k < 0 {
            let positive = self.pow_int(-k)?;
            return Self::one(self.precision()).div(&positive);
        }
        let prec = self.precision();
        let k = k as u32;
        let pow = |base: &Float, round: Round| -> Float {
            let mut f = Float::with_val_round(prec, base, round).0;
            f.pow_assign_round(k, round);
            f
        };
        if k % 2 == 1 {
            return Self::from_parts("pow_int", pow(&self.lo, Round::Down), pow(&self.hi, Round::Up));
        }
        // even power: minimum is at the point of smallest magnitude
        if self.lo >= 0 {
            Self::from_parts("pow_int", pow(&self.lo, Round::Down), pow(&self.hi, Round::Up))
        } else if self.hi <= 0 {
            Self::from_parts("pow_int", pow(&self.hi, Round::Down), pow(&self.lo, Round::Up))
        } else {
            let up_lo = pow(&self.lo, Round::Up);
            let up_hi = pow(&self.hi, Round::Up);
            let hi = if up_lo > up_hi { up_lo } else { up_hi };
            Self::from_parts("pow_int", Float::with_val(prec, 0u32), hi)
        }
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo < 0 {
            return Err(IntervalError::DomainViolation {
                op: "sqrt",
                detail: format!("lower bound {} is negative", self.lo),
            });
        }
        let mut lo = self.lo.clone();
        lo.sqrt_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.sqrt_round(Round::Up);
        Self::from_parts("sqrt", lo, hi)
    }

    pub fn ln(&self) -> Result<Self> {
        if self.lo <= 0 {
            return Err(IntervalError::DomainViolation {
                op: "log",
                detail: format!("lower bound {} is not positive", self.lo),
            });
        }
        let mut lo = self.lo.clone();
        lo.ln_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.ln_round(Round::Up);
        Self::from_parts("log", lo, hi)
    }

    pub fn exp(&self) -> Self {
        let mut lo = self.lo.clone();
        lo.exp_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.exp_round(Round::Up);
        Interval { lo, hi }
    }

    /// Pointwise maximum (exact on endpoints).
    pub fn max(&self, other: &Interval) -> Self {
        let lo = if self.lo >= other.lo {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi >= other.hi {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        Interval { lo, hi }
    }

    /// Pointwise minimum (exact on endpoints).
    pub fn min(&self, other: &Interval) -> Self {
        let lo = if self.lo <= other.lo {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi <= other.hi {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        Interval { lo, hi }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Self {
        let lo = if self.lo <= other.lo {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi >= other.hi {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        Interval { lo, hi }
    }

    /// Re-rounds both endpoints outward to the given precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        Interval {
            lo: Float::with_val_round(prec, &self.lo, Round::Down).0,
            hi: Float::with_val_round(prec, &self.hi, Round::Up).0,
        }
    }

    /// Conservative ceiling for validity thresholds: smallest integer
    /// >= hi, so the claim never starts earlier than certified.
    pub fn ceil_hi(&self) -> Result<Integer> {
        if !self.hi.is_finite() {
            return Err(IntervalError::DomainViolation {
                op: "ceil",
                detail: "upper endpoint not finite".into(),
            });
        }
        let f = Float::with_val(self.hi.prec(), self.hi.ceil_ref());
        Ok(f.to_integer().expect("finite float"))
    }

    /// Conservative floor for range ends: largest integer <= lo.
    pub fn floor_lo(&self) -> Result<Integer> {
        if !self.lo.is_finite() {
            return Err(IntervalError::DomainViolation {
                op: "floor",
                detail: "lower endpoint not finite".into(),
            });
        }
        let f = Float::with_val(self.lo.prec(), self.lo.floor_ref());
        Ok(f.to_integer().expect("finite float"))
    }

    fn brief(&self) -> String {
        format!("[{:.6e}, {:.6e}]", self.lo.to_f64(), self.hi.to_f64())
    }

    /// Decimal rendering with the trailing question-mark convention:
    /// a final `?` means the preceding digit may be off by one.
    ///
    /// Exact integers print plainly; non-finite intervals fall back to
    /// bracket notation.
    pub fn to_decimal_question(&self) -> String {
        if !self.is_finite() {
            return format!("[{}, {}]", self.lo, self.hi);
        }
        if self.is_exact() && self.lo.is_integer() {
            return self
                .lo
                .to_integer()
                .map(|i| i.to_string())
                .unwrap_or_else(|| self.brief());
        }
        // Decimal exponent of the magnitude, approximately.
        let mag = if self.lo.clone().abs() > self.hi.clone().abs() {
            self.lo.clone().abs()
        } else {
            self.hi.clone().abs()
        };
        if mag.is_zero() {
            return "0".into();
        }
        let e10 = (mag.get_exp().unwrap_or(0) as f64 * std::f64::consts::LOG10_2).floor() as i64;

        // Find the largest number of significant digits s such that the
        // interval scaled by 10^k (k = s-1-e10) spans at most 2 integer
        // steps; then one decimal string with a trailing ? covers it.
        let prec = self.precision().max(64);
        for s in (1..=45i64).rev() {
            for e_adj in [0i64, 1, -1] {
                let k = s - 1 - (e10 + e_adj);
                let (a, b) = match self.scaled_bounds(k, prec) {
                    Some(ab) => ab,
                    None => continue,
                };
                let spread = Integer::from(&b - &a);
                if spread <= 2 {
                    let exact = spread == 0;
                    let d = if spread == 2 {
                        Integer::from(&a + 1)
                    } else if spread == 1 {
                        b.clone()
                    } else {
                        a.clone()
                    };
                    return render_scaled(&d, k, exact);
                }
            }
        }
        format!("[{}, {}]", self.lo, self.hi)
    }

    /// `(floor(lo * 10^k), ceil(hi * 10^k))` with conservative rounding.
    fn scaled_bounds(&self, k: i64, prec: u32) -> Option<(Integer, Integer)> {
        let ten_k = Integer::from(10u32).pow(k.unsigned_abs() as u32);
        let mut lo = Float::with_val_round(prec + 64, &self.lo, Round::Down).0;
        let mut hi = Float::with_val_round(prec + 64, &self.hi, Round::Up).0;
        if k >= 0 {
            lo.mul_assign_round(&ten_k, Round::Down);
            hi.mul_assign_round(&ten_k, Round::Up);
        } else {
            lo.div_assign_round(&ten_k, Round::Down);
            hi.div_assign_round(&ten_k, Round::Up);
        }
        if !lo.is_finite() || !hi.is_finite() {
            return None;
        }
        let a = Float::with_val(prec + 64, lo.floor_ref()).to_integer()?;
        let b = Float::with_val(prec + 64, hi.ceil_ref()).to_integer()?;
        Some((a, b))
    }
}

/// Renders `d * 10^-k` with a trailing `?` unless exact.
fn render_scaled(d: &Integer, k: i64, exact: bool) -> String {
    let neg = *d < 0;
    let digits = d.clone().abs().to_string();
    let suffix = if exact { "" } else { "?" };
    let sign = if neg { "-" } else { "" };
    if k <= 0 {
        // d * 10^{-k} is an integer scaled up; print scientifically when big
        let zeros = (-k) as usize;
        if zeros <= 6 {
            return format!("{sign}{digits}{}{suffix}", "0".repeat(zeros));
        }
        let e = digits.len() as i64 - 1 + (-k);
        return format!("{}{}{suffix}e{}", sign, insert_point(&digits), e);
    }
    let k = k as usize;
    let mut body = if digits.len() > k {
        let (int_part, frac) = digits.split_at(digits.len() - k);
        format!("{int_part}.{frac}")
    } else {
        format!("0.{}{}", "0".repeat(k - digits.len()), digits)
    };
    if exact {
        // an exact value carries no uncertainty marker, so trailing
        // zeros are noise
        while body.ends_with('0') {
            body.pop();
        }
        if body.ends_with('.') {
            body.pop();
        }
    }
    format!("{sign}{body}{suffix}")
}

fn insert_point(digits: &str) -> String {
    if digits.len() == 1 {
        digits.to_string()
    } else {
        format!("{}.{}", &digits[..1], &digits[1..])
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_decimal_question())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    #[test]
    fn log_of_e_contains_one() {
        let e = Interval::napier_e(P);
        let l = e.ln().unwrap();
        assert!(l.contains_u64(1));
        // width <= 2 ulp at 128 bits
        assert!(l.width().to_f64() < 1e-36);
    }

    #[test]
    fn division_by_interval_containing_zero_errors() {
        let one = Interval::one(P);
        let denom = Interval::new(
            Float::with_val(P, 0u32),
            Float::with_val(P, 1u32),
        )
        .unwrap();
        assert!(matches!(
            one.div(&denom),
            Err(IntervalError::DomainViolation { op: "div", .. })
        ));
    }

    #[test]
    fn exp_log_roundtrip_contains_seven() {
        let seven = Interval::from_u64(7, P);
        let back = seven.ln().unwrap().exp();
        assert!(back.contains_u64(7));
    }

    #[test]
    fn log_requires_positive_lower_bound() {
        let bad = Interval::new(Float::with_val(P, 0u32), Float::with_val(P, 2u32)).unwrap();
        assert!(bad.ln().is_err());
    }

    #[test]
    fn sqrt_requires_nonnegative() {
        let bad = Interval::from_i64(-1, P);
        assert!(bad.sqrt().is_err());
        let four = Interval::from_u64(4, P);
        assert!(four.sqrt().unwrap().contains_u64(2));
    }

    #[test]
    fn even_power_through_zero_starts_at_zero() {
        let x = Interval::new(Float::with_val(P, -3i32), Float::with_val(P, 2u32)).unwrap();
        let sq = x.pow_int(2).unwrap();
        assert!(sq.lo().is_zero());
        assert!(sq.contains_u64(9));
        assert!(!sq.contains_f64(9.5));
    }

    #[test]
    fn negative_power_inverts() {
        let x = Interval::from_u64(4, P);
        let inv = x.pow_int(-2).unwrap();
        assert!(inv.contains_f64(0.0625));
    }

    #[test]
    fn mul_sign_cases() {
        let a = Interval::new(Float::with_val(P, -2i32), Float::with_val(P, 3u32)).unwrap();
        let b = Interval::new(Float::with_val(P, -5i32), Float::with_val(P, 7u32)).unwrap();
        let p = a.mul(&b).unwrap();
        // extremes: -2*7 = -14, 3*-5 = -15, -2*-5 = 10, 3*7 = 21
        assert!(p.contains_f64(-15.0) && p.contains_f64(21.0));
        assert!(!p.contains_f64(-15.5) && !p.contains_f64(21.5));
    }

    #[test]
    fn gamma_enclosure_is_tight_and_correct() {
        let g = Interval::euler_gamma(256);
        // gamma = 0.5772156649015328606065...
        assert!(*g.lo() > 0.5772156649015328);
        assert!(*g.hi() < 0.5772156649015329);
        assert!(g.width().to_f64() < 1e-70);
    }

    #[test]
    fn question_mark_rendering() {
        let g = Interval::euler_gamma(64);
        let s = g.to_decimal_question();
        assert!(s.starts_with("0.577215664901532"), "{s}");
        assert!(s.ends_with('?'), "{s}");

        assert_eq!(Interval::from_u64(42, P).to_decimal_question(), "42");
        assert_eq!(Interval::zero(P).to_decimal_question(), "0");
        // exact dyadic fraction renders without the question mark
        assert_eq!(Interval::from_f64(0.25, P).to_decimal_question(), "0.25");
    }

    #[test]
    fn question_mark_on_huge_value() {
        // around 1.22e100 with a small relative width
        let x = Interval::from_u64(10, P)
            .pow_int(100)
            .unwrap()
            .mul(&Interval::from_ratio(122, 100, P).unwrap())
            .unwrap();
        let s = x.to_decimal_question();
        assert!(s.contains("e100"), "{s}");
        assert!(s.starts_with("1.22"), "{s}");
    }

    #[test]
    fn ceil_hi_and_floor_lo_are_conservative() {
        let x = Interval::from_ratio(7, 2, P).unwrap(); // 3.5
        assert_eq!(x.ceil_hi().unwrap(), 4);
        assert_eq!(x.floor_lo().unwrap(), 3);
    }
}
