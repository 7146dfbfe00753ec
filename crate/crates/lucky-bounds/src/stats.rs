//! Exact derived quantities of a lucky table, as certified enclosures.
//!
//! For a table `ell_1, ell_2, ...` this module evaluates
//!
//! * `rho_m`: the density product `prod_{i<m} 1/(1 - 1/ell_i)`,
//! * `varrho_n = rho_n - 1 - H_{n-1}`,
//! * `L_i(x)`: the exact count of round-i survivors in `[1, x]`,
//! * `tau_{m,n}`: the fractional-part correction sum in the fundamental
//!   identity `ell_{m,n} = n rho_m (1 - tau_{m,n})`,
//! * `xi_{x,y}`: the reciprocal sum over indices strictly between x and y.
//!
//! Fractional parts are computed from exact integer counts, never from
//! enclosed reals, so the discontinuity of `{.}` cannot destroy
//! certification.
//!
//! A [`StatsContext`] is warmed up single-threaded (`warm`,
//! `warm_counts`) and is read-only afterwards; evaluators take `&self`
//! and may run concurrently.

use rug::Rational;
use thiserror::Error;

use crate::interval::{Interval, IntervalError};
use crate::sieve::LuckyTable;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("index {needed} is beyond the table (size {have})")]
    OutOfTable { needed: u64, have: usize },
    #[error("{what} cache only warmed to {warmed}, need {needed}; call the warm-up first")]
    NotWarmed {
        what: &'static str,
        needed: u64,
        warmed: u64,
    },
    #[error("argument {name} = {value} outside domain: {detail}")]
    BadArgument {
        name: &'static str,
        value: f64,
        detail: &'static str,
    },
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

type Result<T> = std::result::Result<T, StatsError>;

/// Survivor bitsets of the intermediate sieve rounds over a fixed value
/// window, supporting exact `L_i(x)` counts (rank) and `ell_{m,n}`
/// recovery (select).
#[derive(Debug)]
pub struct CountTable {
    /// Values `1..=window` are represented.
    window: u64,
    /// `rounds[j]` is the bitset of round `j+2` survivors, value v at
    /// bit v-1. Rounds stop once a round's modulus exceeds its survivor
    /// count inside the window; beyond that nothing changes.
    rounds: Vec<Vec<u64>>,
}

impl CountTable {
    fn build(table: &LuckyTable, window: u64) -> Result<CountTable> {
        let words = (window as usize).div_ceil(64) + 1;
        // round 2: {2} plus odd values >= 3
        let mut bits = vec![0u64; words];
        let mut pop = 0u64;
        for v in 1..=window {
            if v == 2 || (v >= 3 && v % 2 == 1) {
                bits[(v as usize - 1) / 64] |= 1 << ((v as usize - 1) % 64);
                pop += 1;
            }
        }
        let mut rounds = vec![bits];
        let mut j = 2u64; // round index of the last stored bitset
        loop {
            let d = table
                .get(j as usize)
                .ok_or(StatsError::OutOfTable {
                    needed: j,
                    have: table.len(),
                })?;
            if d > pop {
                break; // no deletion reaches the window, now or later
            }
            let prev = rounds.last().unwrap().clone();
            let mut next = prev.clone();
            let mut rank = 0u64;
            let mut removed = 0u64;
            for (w, &word) in prev.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    rank += 1;
                    if rank.is_multiple_of(d) {
                        next[w] &= !(1u64 << b);
                        removed += 1;
                    }
                }
            }
            pop -= removed;
            rounds.push(next);
            j += 1;
        }
        Ok(CountTable { window, rounds })
    }

    fn row(&self, i: usize) -> &[u64] {
        debug_assert!(i >= 2);
        let idx = (i - 2).min(self.rounds.len() - 1);
        &self.rounds[idx]
    }

    /// Exact `L_i(x)` for `1 <= x <= window`.
    pub fn count(&self, i: usize, x: u64) -> u64 {
        debug_assert!(x <= self.window);
        if i == 1 {
            return x; // round 1 is every positive integer
        }
        let bits = self.row(i);
        let full_words = x as usize / 64;
        let mut count: u64 = bits[..full_words]
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum();
        let rem = x as usize % 64;
        if rem > 0 {
            count += (bits[full_words] & ((1u64 << rem) - 1)).count_ones() as u64;
        }
        count
    }

    /// Value of the n-th survivor of round m inside the window, if any.
    pub fn nth_survivor(&self, m: usize, n: u64) -> Option<u64> {
        if m == 1 {
            return (n <= self.window).then_some(n);
        }
        let bits = self.row(m);
        let mut seen = 0u64;
        for (w, &word) in bits.iter().enumerate() {
            let ones = word.count_ones() as u64;
            if seen + ones >= n {
                let mut word = word;
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    word &= word - 1;
                    seen += 1;
                    if seen == n {
                        let v = (w * 64 + b + 1) as u64;
                        return (v <= self.window).then_some(v);
                    }
                }
            } else {
                seen += ones;
            }
        }
        None
    }
}

/// Spacing of the rho/harmonic checkpoints; evaluation replays at most
/// this many factors from the nearest checkpoint.
const CHECKPOINT_STRIDE: u64 = 1 << 16;

/// Shared evaluation context over an immutable table.
///
/// Instead of caching an enclosure per index (hundreds of MB at desk
/// scale) the warm-up stores checkpoints of the running product `rho`
/// and the running harmonic sum every [`CHECKPOINT_STRIDE`] indices;
/// point queries replay the gap deterministically, and range scans
/// (`rho_range`) replay each chunk once.
pub struct StatsContext<'a> {
    table: &'a LuckyTable,
    prec: u32,
    /// `rho_checkpoints[j]` encloses `rho_{2 + j*stride}`.
    rho_checkpoints: Vec<Interval>,
    /// `harmonic_checkpoints[j]` encloses `H_{1 + j*stride}` (so it
    /// lines up with `varrho_{2 + j*stride} = rho - 1 - H`).
    harmonic_checkpoints: Vec<Interval>,
    /// Highest index `m` covered by the warm-up.
    warm_frontier: u64,
    counts: Option<CountTable>,
}

impl<'a> StatsContext<'a> {
    pub fn new(table: &'a LuckyTable, precision_bits: u32) -> Self {
        StatsContext {
            table,
            prec: precision_bits,
            rho_checkpoints: Vec::new(),
            harmonic_checkpoints: Vec::new(),
            warm_frontier: 0,
            counts: None,
        }
    }

    pub fn table(&self) -> &LuckyTable {
        self.table
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Highest m with rho_m (and varrho_m) reachable without re-warming.
    pub fn warmed_to(&self) -> u64 {
        self.warm_frontier
    }

    /// Advances the running pair (rho_m, H_{m-1}) by one index.
    fn advance(&self, rho: &mut Interval, harmonic: &mut Interval, m: u64) -> Result<()> {
        // moving from index m to m+1
        let ell = self.table.get(m as usize).expect("within table") as i64;
        let factor = Interval::from_rational(&Rational::from((ell, ell - 1)), self.prec);
        *rho = rho.mul(&factor)?;
        *harmonic = harmonic.add(&Interval::from_ratio(1, m, self.prec)?);
        Ok(())
    }

    /// Extends the checkpoint chain up to index `n_max` (single-threaded).
    pub fn warm(&mut self, n_max: u64) -> Result<()> {
        if n_max > self.table.len() as u64 {
            return Err(StatsError::OutOfTable {
                needed: n_max,
                have: self.table.len(),
            });
        }
        if self.rho_checkpoints.is_empty() {
            // rho_2 = 1/(1 - 1/ell_1) = 2 and H_1 = 1, exactly
            self.rho_checkpoints.push(Interval::from_u64(2, self.prec));
            self.harmonic_checkpoints.push(Interval::one(self.prec));
            self.warm_frontier = 2;
        }
        if n_max <= self.warm_frontier {
            return Ok(());
        }
        // resume from the last checkpoint
        let j = self.rho_checkpoints.len() - 1;
        let mut m = 2 + j as u64 * CHECKPOINT_STRIDE;
        let mut rho = self.rho_checkpoints[j].clone();
        let mut harmonic = self.harmonic_checkpoints[j].clone();
        while m < n_max {
            self.advance(&mut rho, &mut harmonic, m)?;
            m += 1;
            if (m - 2).is_multiple_of(CHECKPOINT_STRIDE) && (m - 2) / CHECKPOINT_STRIDE == self.rho_checkpoints.len() as u64 {
                self.rho_checkpoints.push(rho.clone());
                self.harmonic_checkpoints.push(harmonic.clone());
            }
        }
        self.warm_frontier = self.warm_frontier.max(n_max);
        Ok(())
    }

    /// Running pair `(rho_m, H_{m-1})` at index `m`, replayed from the
    /// nearest checkpoint at or below `m`.
    fn replay_to(&self, m: u64) -> Result<(Interval, Interval)> {
        if m < 2 {
            return Err(StatsError::BadArgument {
                name: "m",
                value: m as f64,
                detail: "rho is defined for m >= 2",
            });
        }
        if m > self.warm_frontier {
            return Err(StatsError::NotWarmed {
                what: "rho",
                needed: m,
                warmed: self.warm_frontier,
            });
        }
        let j = ((m - 2) / CHECKPOINT_STRIDE) as usize;
        let j = j.min(self.rho_checkpoints.len() - 1);
        let mut cur = 2 + j as u64 * CHECKPOINT_STRIDE;
        let mut rho = self.rho_checkpoints[j].clone();
        let mut harmonic = self.harmonic_checkpoints[j].clone();
        while cur < m {
            self.advance(&mut rho, &mut harmonic, cur)?;
            cur += 1;
        }
        Ok((rho, harmonic))
    }

    /// Enclosures of `rho_n` for every n in `lo..=hi`, one replayed
    /// chunk; intended for the verifier's range scans.
    pub fn rho_range(&self, lo: u64, hi: u64) -> Result<Vec<Interval>> {
        if hi < lo {
            return Ok(Vec::new());
        }
        let (mut rho, mut harmonic) = self.replay_to(lo)?;
        if hi > self.warm_frontier {
            return Err(StatsError::NotWarmed {
                what: "rho",
                needed: hi,
                warmed: self.warm_frontier,
            });
        }
        let mut out = Vec::with_capacity((hi - lo + 1) as usize);
        let mut m = lo;
        loop {
            out.push(rho.clone());
            if m == hi {
                break;
            }
            self.advance(&mut rho, &mut harmonic, m)?;
            m += 1;
        }
        Ok(out)
    }

    /// Builds the survivor-count window used by `count_L` and `tau`
    /// (single-threaded). A larger existing window is kept.
    pub fn warm_counts(&mut self, window: u64) -> Result<()> {
        let have = self.counts.as_ref().map_or(0, |c| c.window);
        if window > have {
            self.counts = Some(CountTable::build(self.table, window)?);
        }
        Ok(())
    }

    /// Certified enclosure of `rho_m = prod_{i=1}^{m-1} 1/(1 - 1/ell_i)`.
    pub fn rho(&self, m: u64) -> Result<Interval> {
        if m > self.table.len() as u64 {
            return Err(StatsError::OutOfTable {
                needed: m,
                have: self.table.len(),
            });
        }
        Ok(self.replay_to(m)?.0)
    }

    /// Certified enclosure of `varrho_n = rho_n - 1 - H_{n-1}`.
    pub fn varrho(&self, n: u64) -> Result<Interval> {
        if n > self.table.len() as u64 {
            return Err(StatsError::OutOfTable {
                needed: n,
                have: self.table.len(),
            });
        }
        let (rho, harmonic) = self.replay_to(n)?;
        Ok(rho.sub(&Interval::one(self.prec)).sub(&harmonic))
    }

    /// Exact count `L_i(x)` of round-i survivors in `[1, x]`.
    pub fn count_l(&self, i: u64, x: f64) -> Result<u64> {
        if x < 0.0 || !x.is_finite() {
            return Err(StatsError::BadArgument {
                name: "x",
                value: x,
                detail: "count requires a finite nonnegative bound",
            });
        }
        let xi = x.floor() as u64;
        if i == 1 {
            return Ok(xi);
        }
        if i > self.table.len() as u64 {
            return Err(StatsError::OutOfTable {
                needed: i,
                have: self.table.len(),
            });
        }
        if xi == 0 {
            return Ok(0);
        }
        let counts = self.counts.as_ref().ok_or(StatsError::NotWarmed {
            what: "counts",
            needed: xi,
            warmed: 0,
        })?;
        if xi > counts.window {
            return Err(StatsError::NotWarmed {
                what: "counts",
                needed: xi,
                warmed: counts.window,
            });
        }
        Ok(counts.count(i as usize, xi))
    }

    /// The n-th element of the m-th intermediate sequence, recovered from
    /// the count window (requires `ell_n` within the window since
    /// `ell_{m,n} <= ell_n`).
    pub fn ell_mn(&self, m: u64, n: u64) -> Result<u64> {
        if m < 2 {
            return Err(StatsError::BadArgument {
                name: "m",
                value: m as f64,
                detail: "intermediate sequences start at round 2",
            });
        }
        if m > self.table.len() as u64 || n > self.table.len() as u64 {
            return Err(StatsError::OutOfTable {
                needed: m.max(n),
                have: self.table.len(),
            });
        }
        // stabilized entries come straight from the table
        if self.table.get(m as usize).unwrap() > n {
            return Ok(self.table.get(n as usize).unwrap());
        }
        let counts = self.counts.as_ref().ok_or(StatsError::NotWarmed {
            what: "counts",
            needed: self.table.get(n as usize).unwrap(),
            warmed: 0,
        })?;
        counts
            .nth_survivor(m as usize, n)
            .ok_or(StatsError::NotWarmed {
                what: "counts",
                needed: self.table.get(n as usize).unwrap(),
                warmed: counts.window,
            })
    }

    /// Certified enclosure of
    /// `tau_{m,n} = (1/n) sum_{i<m} (rho_{i+1}/rho_m) {L_i(ell_{m,n}) / ell_i}`.
    ///
    /// The ratio `rho_{i+1}/rho_m` is evaluated as the exact-rational
    /// product `prod_{j=i+1}^{m-1} (1 - 1/ell_j)` rather than a quotient
    /// of cached enclosures, and the fractional parts come from exact
    /// integer counts.
    pub fn tau(&self, m: u64, n: u64) -> Result<Interval> {
        if m < 2 {
            return Err(StatsError::BadArgument {
                name: "m",
                value: m as f64,
                detail: "tau requires m >= 2",
            });
        }
        if n < 1 {
            return Err(StatsError::BadArgument {
                name: "n",
                value: n as f64,
                detail: "tau requires n >= 1",
            });
        }
        let x = self.ell_mn(m, n)?;
        // terms i = m-1 down to 1, accumulating the tail product
        let mut ratio = Interval::one(self.prec); // rho_{i+1}/rho_m
        let mut sum = Interval::zero(self.prec);
        for i in (1..m).rev() {
            let ell_i = self.table.get(i as usize).unwrap();
            let l_i = if i == 1 {
                x
            } else {
                let counts = self.counts.as_ref().ok_or(StatsError::NotWarmed {
                    what: "counts",
                    needed: x,
                    warmed: 0,
                })?;
                if x > counts.window {
                    return Err(StatsError::NotWarmed {
                        what: "counts",
                        needed: x,
                        warmed: counts.window,
                    });
                }
                counts.count(i as usize, x)
            };
            let frac = Interval::from_ratio((l_i % ell_i) as i64, ell_i, self.prec)?;
            sum = sum.add(&ratio.mul(&frac)?);
            // extend the product with the factor (1 - 1/ell_i)
            let factor =
                Interval::from_rational(&Rational::from((ell_i - 1, ell_i)), self.prec);
            ratio = ratio.mul(&factor)?;
        }
        Ok(sum.div(&Interval::from_u64(n, self.prec))?)
    }

    /// `tau_m = tau_{m,m}`.
    pub fn tau_diag(&self, m: u64) -> Result<Interval> {
        self.tau(m, m)
    }

    /// Certified enclosure of `xi_{x,y} = sum_{x < i < y} 1/ell_i` over
    /// integer indices; the empty sum is the exact zero interval.
    pub fn xi(&self, x: f64, y: f64) -> Result<Interval> {
        if !(x >= 1.0) || !(y >= 1.0) {
            return Err(StatsError::BadArgument {
                name: "x",
                value: if x >= 1.0 { y } else { x },
                detail: "xi requires x, y >= 1",
            });
        }
        if y > self.table.len() as f64 + 1.0 {
            return Err(StatsError::OutOfTable {
                needed: y.ceil() as u64,
                have: self.table.len(),
            });
        }
        let first = x.floor() as u64 + 1; // smallest integer > x
        let last = y.ceil() as u64 - 1; // largest integer < y
        let mut sum = Interval::zero(self.prec);
        if first > last {
            return Ok(sum);
        }
        for i in first..=last {
            let ell = self.table.get(i as usize).unwrap();
            sum = sum.add(&Interval::from_ratio(1, ell, self.prec)?);
        }
        Ok(sum)
    }

    /// `varrho_n` recomputed through the telescoped form
    /// `sum_{k=2}^{n-1} (1/k) (1/((1 - 1/ell_k)(1 - tau_k)) - 1)`;
    /// an independent route used for cross-checking.
    pub fn varrho_via_tau(&self, n: u64) -> Result<Interval> {
        let mut sum = Interval::zero(self.prec);
        let one = Interval::one(self.prec);
        for k in 2..n {
            let ell = self.table.get(k as usize).ok_or(StatsError::OutOfTable {
                needed: k,
                have: self.table.len(),
            })?;
            let tau_k = self.tau(k, k)?;
            let a = Interval::from_rational(&Rational::from((ell - 1, ell)), self.prec);
            let denom = a.mul(&one.sub(&tau_k))?;
            let term = one.div(&denom)?.sub(&one);
            sum = sum.add(&term.div(&Interval::from_u64(k, self.prec))?);
        }
        Ok(sum)
    }
}
