//! Special functions on intervals: principal Lambert W, omega(x) =
//! e^{W(x)}, harmonic numbers, and the closed-form tail integrals used by
//! the constant pipeline.

use rug::float::Round;
use rug::ops::{AddAssignRound, DivAssignRound, SubAssignRound};
use rug::{Assign, Float, Integer};

use super::{Interval, IntervalError};

type Result<T> = std::result::Result<T, IntervalError>;

/// Largest precision bump used internally by the Newton iteration.
const NEWTON_GUARD_BITS: u32 = 32;

/// Enclosure of the principal Lambert W over the interval `x`.
///
/// W is increasing, so the enclosure is assembled from certified
/// enclosures of W at the two endpoints. Each endpoint enclosure starts
/// from the elementary bracket (W between `log x - loglog x` and `log x`
/// for x >= e, and similar on the rest of the domain) and is refined by
/// interval Newton on `w e^w - x`, with bisection as fallback, until the
/// width stops improving.
pub fn lambert_w(x: &Interval) -> Result<Interval> {
    let prec = x.precision();
    // domain: x >= -1/e; certified via an upper bound of -1/e
    let neg_inv_e = Interval::from_i64(-1, prec).div(&Interval::napier_e(prec))?;
    if !(x.lo() >= neg_inv_e.lo()) {
        return Err(IntervalError::DomainViolation {
            op: "lambert_w",
            detail: format!(
                "argument lower bound {} below -1/e",
                x.lo().to_f64()
            ),
        });
    }
    let lo_enc = w_point(x.lo(), prec)?;
    let hi_enc = if x.is_exact() {
        lo_enc.clone()
    } else {
        w_point(x.hi(), prec)?
    };
    Interval::new(lo_enc.lo().clone(), hi_enc.hi().clone()).map_err(|_| {
        IntervalError::InvalidResult { op: "lambert_w" }
    })
}

/// omega(x) := e^{W(x)}; satisfies `omega(x) log omega(x) = x` for x >= e.
pub fn omega(x: &Interval) -> Result<Interval> {
    Ok(lambert_w(x)?.exp())
}

/// Certified enclosure of W at a single point `t` (assumed >= -1/e).
fn w_point(t: &Float, prec: u32) -> Result<Interval> {
    let work = prec + NEWTON_GUARD_BITS;
    let tv = Interval::singleton(Float::with_val(work, t));
    let e = Interval::napier_e(work);

    // Initial bracket guaranteed to contain W(t).
    let mut w: Interval = if *t >= *e.hi() {
        // x >= e: log x - loglog x <= W <= log x
        let ln = tv.ln()?;
        let lln = ln.ln()?;
        Interval::new(
            ln.sub(&lln).lo().clone(),
            ln.hi().clone(),
        )
        .map_err(|_| IntervalError::InvalidResult { op: "lambert_w" })?
    } else if *t >= 0 {
        // 0 <= x <= e: x/e <= W <= min(1, x)
        let lo = tv.div(&e)?.lo().clone();
        let hi = if *t < 1 {
            Float::with_val(work, t)
        } else {
            Float::with_val(work, 1u32)
        };
        Interval::new(lo, hi).map_err(|_| IntervalError::InvalidResult { op: "lambert_w" })?
    } else {
        // -1/e <= x < 0: -1 <= W < 0
        Interval::new(Float::with_val(work, -1i32), Float::with_val(work, 0u32))
            .map_err(|_| IntervalError::InvalidResult { op: "lambert_w" })?
    };

    // f(w) = w e^w - t, increasing on [-1, inf).
    let f_at = |m: &Interval| -> Result<Interval> { Ok(m.exp().mul(m)?.sub(&tv)) };
    let mut last_width = w.width();
    for _ in 0..64 {
        let mid = midpoint(&w, work);
        let midi = Interval::singleton(mid.clone());
        let fm = f_at(&midi)?;
        // derivative over the whole bracket: (1 + w) e^w
        let deriv = w.add(&Interval::one(work)).mul(&w.exp())?;
        let mut stepped = false;
        if !deriv.contains_u64(0) {
            // Newton: w' = mid - f(mid)/f'(w), intersected with w
            let delta = fm.div(&deriv)?;
            let cand = midi.sub(&delta);
            if let Some(next) = intersect(&w, &cand) {
                w = next;
                stepped = true;
            }
        }
        if !stepped {
            // bisect on the certified sign of f(mid)
            if fm.certainly_lt_u64(0) {
                w = Interval::new(mid, w.hi().clone())
                    .map_err(|_| IntervalError::InvalidResult { op: "lambert_w" })?;
            } else if fm.certainly_gt_u64(0) {
                w = Interval::new(w.lo().clone(), mid)
                    .map_err(|_| IntervalError::InvalidResult { op: "lambert_w" })?;
            } else {
                break; // cannot narrow further at this precision
            }
        }
        let width = w.width();
        if width >= last_width {
            break;
        }
        last_width = width;
    }
    Ok(w.with_precision(prec))
}

fn midpoint(x: &Interval, prec: u32) -> Float {
    let mut m = Float::with_val_round(prec, x.lo(), Round::Down).0;
    m.add_assign_round(x.hi(), Round::Down);
    m.div_assign_round(2u32, Round::Down);
    // clamp inside
    if m < *x.lo() {
        Float::with_val(prec, x.lo())
    } else if m > *x.hi() {
        Float::with_val(prec, x.hi())
    } else {
        m
    }
}

fn intersect(a: &Interval, b: &Interval) -> Option<Interval> {
    let lo = if a.lo() >= b.lo() { a.lo() } else { b.lo() };
    let hi = if a.hi() <= b.hi() { a.hi() } else { b.hi() };
    if lo > hi {
        return None;
    }
    Interval::new(lo.clone(), hi.clone()).ok()
}

/// Enclosure of `H_n = sum_{k=1}^n 1/k`.
///
/// Up to 10^6 terms the sum is accumulated directly with directed
/// rounding; beyond that the Euler-Maclaurin-style window
/// `H_n = log n + gamma + 1/(2n) - theta/(12 n^2)`, `theta in [0, 1]`,
/// is evaluated in interval arithmetic.
pub fn harmonic_sum(n: u64, prec: u32) -> Interval {
    if n == 0 {
        return Interval::zero(prec);
    }
    if n <= 1_000_000 {
        let mut lo = Float::with_val(prec, 0u32);
        let mut hi = Float::with_val(prec, 0u32);
        let mut kf = Float::new(prec);
        for k in 1..=n {
            kf.assign(k); // exact: k <= 10^6
            let recip_lo = Float::with_val_round(prec, 1u32 / &kf, Round::Down).0;
            let recip_hi = Float::with_val_round(prec, 1u32 / &kf, Round::Up).0;
            lo.add_assign_round(&recip_lo, Round::Down);
            hi.add_assign_round(&recip_hi, Round::Up);
        }
        return Interval::new(lo, hi).expect("ordered by construction");
    }
    let nv = Interval::from_u64(n, prec);
    let ln = nv.ln().expect("n positive");
    let gamma = Interval::euler_gamma(prec);
    let half = Interval::one(prec)
        .div(&nv.mul(&Interval::from_u64(2, prec)).expect("finite"))
        .expect("nonzero");
    let base = ln.add(&gamma).add(&half);
    let theta_mag = Interval::one(prec)
        .div(
            &nv.pow_int(2)
                .expect("finite")
                .mul(&Interval::from_u64(12, prec))
                .expect("finite"),
        )
        .expect("nonzero");
    // subtract theta * theta_mag with theta in [0, 1]
    let mut lo = base.lo().clone();
    lo.sub_assign_round(theta_mag.hi(), Round::Down);
    Interval::new(lo, base.hi().clone()).expect("ordered")
}

/// The improper integrals with elementary antiderivatives used by the
/// bound derivations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailIntegralKind {
    /// `int_L^inf (log s / s)^2 ds`
    SquaredLogOverSquare,
    /// `int_L^inf (log s)^3 / s^2 ds`
    CubedLogOverSquare,
    /// `int_L^inf ( c3 (log s / s)^2
    ///            + (r2/c1) ((log s + c2)/s + c3 (log s / s)^2)^2 ) ds`
    MixedC4Integrand,
}

/// Named parameters for [`tail_integral`]; only the mixed kind reads them.
#[derive(Debug, Clone, Default)]
pub struct TailParams {
    pub c1: Option<Interval>,
    pub c2: Option<Interval>,
    pub c3: Option<Interval>,
    pub r2: Option<Interval>,
}

/// `int_L^inf (log s)^k / s^p ds` for p >= 2, via the elementary
/// antiderivative
/// `L^{1-p} * sum_{j=0}^{k} k!/(k-j)! * (log L)^{k-j} / (p-1)^{j+1}`.
pub fn tail_power_log(k: u32, p: u32, lower: &Interval) -> Result<Interval> {
    assert!(p >= 2, "tail integrals only converge for p >= 2");
    let prec = lower.precision();
    let ln_l = lower.ln()?;
    let mut sum = Interval::zero(prec);
    let mut coeff = Integer::from(1u32); // k!/(k-j)!
    let pm1 = Interval::from_u64((p - 1) as u64, prec);
    let mut pm1_pow = pm1.clone(); // (p-1)^{j+1}
    for j in 0..=k {
        if j > 0 {
            coeff *= k - j + 1;
            pm1_pow = pm1_pow.mul(&pm1)?;
        }
        let term = Interval::from_integer(&coeff, prec)
            .mul(&ln_l.pow_int((k - j) as i32)?)?
            .div(&pm1_pow)?;
        sum = sum.add(&term);
    }
    // L^{1-p} = 1 / L^{p-1}
    sum.div(&lower.pow_int((p - 1) as i32)?)
}

/// Certified value of the improper integral of the given kind from
/// `lower` to infinity (the upper limit contributes nothing).
///
/// Requires `lower.lo >= 1`; the mixed kind additionally requires the
/// parameters `c1`, `c2`, `c3`, `r2`.
pub fn tail_integral(
    kind: TailIntegralKind,
    lower: &Interval,
    params: &TailParams,
) -> Result<Interval> {
    if !(*lower.lo() >= 1) {
        return Err(IntervalError::DomainViolation {
            op: "tail_integral",
            detail: format!("lower limit {} must be >= 1", lower.lo().to_f64()),
        });
    }
    match kind {
        TailIntegralKind::SquaredLogOverSquare => tail_power_log(2, 2, lower),
        TailIntegralKind::CubedLogOverSquare => tail_power_log(3, 2, lower),
        TailIntegralKind::MixedC4Integrand => {
            let c1 = params
                .c1
                .as_ref()
                .ok_or(IntervalError::MissingParameter("c1"))?;
            let c2 = params
                .c2
                .as_ref()
                .ok_or(IntervalError::MissingParameter("c2"))?;
            let c3 = params
                .c3
                .as_ref()
                .ok_or(IntervalError::MissingParameter("c3"))?;
            let r2 = params
                .r2
                .as_ref()
                .ok_or(IntervalError::MissingParameter("r2"))?;
            // expand ((log s + c2)/s + c3 (log s/s)^2)^2 into power-log tails
            let t22 = tail_power_log(2, 2, lower)?;
            let t12 = tail_power_log(1, 2, lower)?;
            let t02 = tail_power_log(0, 2, lower)?;
            let t33 = tail_power_log(3, 3, lower)?;
            let t23 = tail_power_log(2, 3, lower)?;
            let t44 = tail_power_log(4, 4, lower)?;
            let two = Interval::from_u64(2, lower.precision());
            let square_part = t22
                .add(&two.mul(c2)?.mul(&t12)?)
                .add(&c2.pow_int(2)?.mul(&t02)?)
                .add(&two.mul(c3)?.mul(&t33)?)
                .add(&two.mul(c2)?.mul(c3)?.mul(&t23)?)
                .add(&c3.pow_int(2)?.mul(&t44)?);
            Ok(c3.mul(&t22)?.add(&r2.div(c1)?.mul(&square_part)?))
        }
    }
}

/// Point evaluation (as an interval) of the integrand belonging to a
/// tail kind; used by tests that bracket the antiderivative's derivative.
pub fn tail_integrand_at(
    kind: TailIntegralKind,
    s: &Interval,
    params: &TailParams,
) -> Result<Interval> {
    let ln = s.ln()?;
    match kind {
        TailIntegralKind::SquaredLogOverSquare => ln.div(s)?.pow_int(2),
        TailIntegralKind::CubedLogOverSquare => ln.pow_int(3)?.div(&s.pow_int(2)?),
        TailIntegralKind::MixedC4Integrand => {
            let c1 = params
                .c1
                .as_ref()
                .ok_or(IntervalError::MissingParameter("c1"))?;
            let c2 = params
                .c2
                .as_ref()
                .ok_or(IntervalError::MissingParameter("c2"))?;
            let c3 = params
                .c3
                .as_ref()
                .ok_or(IntervalError::MissingParameter("c3"))?;
            let r2 = params
                .r2
                .as_ref()
                .ok_or(IntervalError::MissingParameter("r2"))?;
            let sq = ln.div(s)?.pow_int(2)?;
            let inner = ln.add(c2).div(s)?.add(&c3.mul(&sq)?);
            Ok(c3.mul(&sq)?.add(&r2.div(c1)?.mul(&inner.pow_int(2)?)?))
        }
    }
}
