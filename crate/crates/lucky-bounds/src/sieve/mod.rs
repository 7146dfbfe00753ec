//! Generation of lucky numbers.
//!
//! The sieve starts from the sequence `2, 3, 5, 7, 9, ...` (the number 2
//! followed by the odd integers, so that the first entry is 2 rather than
//! the classical leading 1) and repeatedly deletes every d-th surviving
//! term, where d runs through the surviving terms themselves: round m
//! deletes every d-th survivor with d equal to the m-th survivor. The
//! fixed points of this process are the lucky numbers
//! `2, 3, 7, 9, 13, 15, 21, 25, 31, 33, ...`.
//!
//! Two independent implementations are provided: [`generate`] drives the
//! deletions through a Fenwick-indexed bit array ([`RankSelect`]) in
//! O(log w) per deletion, and [`naive_generate`] transcribes the sieve as
//! repeated list deletion. The latter is the oracle for the former.

mod rank_select;
pub mod table_io;

pub use rank_select::RankSelect;

use thiserror::Error;

/// Everything that can go wrong while sieving.
#[derive(Debug, Error)]
pub enum SieveError {
    #[error("limit must be at least 1")]
    ZeroLimit,
    #[error("cannot allocate a candidate window of {candidates} entries")]
    ResourceExhausted { candidates: usize },
    #[error("intermediate sequences require round m >= 2, got {0}")]
    RoundTooSmall(usize),
}

/// Immutable table of the first N lucky numbers, `values[0] = 2`.
///
/// The convention that the first lucky number is 2 (not the classical 1)
/// is what makes the density product `rho` finite; see [`LuckyTable::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LuckyTable {
    values: Vec<u64>,
}

impl LuckyTable {
    /// Wraps raw values without checking the sieve invariants.
    /// Intended for tests and for deserialization paths that validate
    /// separately.
    pub fn from_values_unchecked(values: Vec<u64>) -> Self {
        LuckyTable { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// 1-based accessor: `get(n)` is the n-th lucky number.
    pub fn get(&self, n: usize) -> Option<u64> {
        if n == 0 {
            None
        } else {
            self.values.get(n - 1).copied()
        }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Checks the structural invariants: first entries 2, 3, 7; strictly
    /// increasing; every entry after the first odd.
    ///
    /// Verification routines call this before trusting a table, so a
    /// corrupted table can never support a clean "pass".
    pub fn validate(&self) -> Result<(), String> {
        let v = &self.values;
        if v.is_empty() {
            return Err("table is empty".into());
        }
        if v[0] != 2 {
            return Err(format!("first entry must be 2, got {}", v[0]));
        }
        for (i, &expect) in [2u64, 3, 7].iter().enumerate() {
            if let Some(&got) = v.get(i) {
                if got != expect {
                    return Err(format!("entry {} must be {}, got {}", i + 1, expect, got));
                }
            }
        }
        for i in 1..v.len() {
            if v[i] <= v[i - 1] {
                return Err(format!(
                    "entries must be strictly increasing, violated at index {}",
                    i + 1
                ));
            }
            if v[i].is_multiple_of(2) {
                return Err(format!("entry {} is even: {}", i + 1, v[i]));
            }
        }
        Ok(())
    }
}

/// Candidate value at 1-based position `i` of the initial sequence
/// `2, 3, 5, 7, ...`.
#[inline]
fn candidate_value(i: usize) -> u64 {
    if i == 1 {
        2
    } else {
        2 * i as u64 - 1
    }
}

/// Value window that should comfortably contain the first `n` lucky
/// numbers; grown by 25% on shortfall.
fn initial_window(n: usize) -> u64 {
    if n < 4 {
        return 64;
    }
    let nf = n as f64;
    let ln = nf.ln();
    (nf * (ln + ln.ln() * ln.ln() + 3.0)).ceil() as u64 + 16
}

/// Generates the first `limit_index` lucky numbers with the
/// rank/select deletion sieve.
///
/// Matches [`naive_generate`] bit for bit; never silently truncates.
pub fn generate(limit_index: usize) -> Result<LuckyTable, SieveError> {
    if limit_index == 0 {
        return Err(SieveError::ZeroLimit);
    }
    let mut window = initial_window(limit_index);
    loop {
        match sieve_window(limit_index, window)? {
            Some(values) => return Ok(LuckyTable { values }),
            None => window = window + window / 4,
        }
    }
}

/// One sieving pass over a fixed window; `None` signals shortfall.
fn sieve_window(n: usize, window: u64) -> Result<Option<Vec<u64>>, SieveError> {
    // candidates with value <= window: position i has value 2i-1 (i >= 2)
    let count = window.div_ceil(2) as usize;
    let mut rs = RankSelect::new_all_set(count)
        .ok_or(SieveError::ResourceExhausted { candidates: count })?;
    let mut m = 2usize;
    loop {
        let pos = match rs.select(m) {
            Some(p) => p,
            None => return Ok(None), // fewer than m survivors: window too small
        };
        let d = candidate_value(pos) as usize;
        if d > n {
            break; // entries 1..=n can no longer change
        }
        // Delete ranks d, 2d, 3d, ... . Processing high-to-low keeps the
        // ranks of not-yet-deleted lower positions stable.
        let deletions = rs.ones() / d;
        for k in (1..=deletions).rev() {
            let p = rs.select(k * d).expect("rank within population");
            rs.clear(p);
        }
        m += 1;
    }
    if rs.ones() < n {
        return Ok(None);
    }
    let values: Vec<u64> = rs.iter_set().take(n).map(candidate_value).collect();
    Ok(Some(values))
}

/// Direct transcription of the sieve as repeated list deletion.
///
/// Quadratic-ish; intended for `limit_index` up to about 10^6, where it
/// serves as the independent oracle for [`generate`].
pub fn naive_generate(limit_index: usize) -> Result<LuckyTable, SieveError> {
    if limit_index == 0 {
        return Err(SieveError::ZeroLimit);
    }
    let mut window = initial_window(limit_index);
    loop {
        let count = window.div_ceil(2) as usize;
        let mut vals: Vec<u64> = Vec::new();
        vals.try_reserve_exact(count)
            .map_err(|_| SieveError::ResourceExhausted { candidates: count })?;
        vals.extend((1..=count).map(candidate_value));

        let mut m = 2usize;
        let mut short = false;
        loop {
            if m > vals.len() {
                short = true;
                break;
            }
            let d = vals[m - 1] as usize;
            if d > limit_index {
                break;
            }
            if d <= vals.len() {
                let mut i = 0usize;
                vals.retain(|_| {
                    i += 1;
                    !i.is_multiple_of(d)
                });
            }
            m += 1;
        }
        if !short && vals.len() >= limit_index {
            vals.truncate(limit_index);
            return Ok(LuckyTable { values: vals });
        }
        window = window + window / 4;
    }
}

/// A prefix of the m-th intermediate sieve sequence: the survivors after
/// rounds 2..m-1, i.e. the set from which round m deletes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntermediateSequence {
    pub m: usize,
    pub values: Vec<u64>,
}

impl IntermediateSequence {
    /// 1-based accessor for the n-th element of the sequence.
    pub fn get(&self, n: usize) -> Option<u64> {
        if n == 0 {
            None
        } else {
            self.values.get(n - 1).copied()
        }
    }
}

/// First `prefix_len` entries of the m-th intermediate sequence (m >= 2).
///
/// For m = 2 this is `2, 3, 5, 7, 9, ...`; each later round deletes the
/// positions divisible by the round's own m-th element.
pub fn intermediate(m: usize, prefix_len: usize) -> Result<IntermediateSequence, SieveError> {
    if m < 2 {
        return Err(SieveError::RoundTooSmall(m));
    }
    if prefix_len == 0 {
        return Ok(IntermediateSequence { m, values: vec![] });
    }
    let mut window = (prefix_len as u64) * 4 + 64;
    loop {
        let count = window.div_ceil(2) as usize;
        let mut vals: Vec<u64> = Vec::new();
        vals.try_reserve_exact(count)
            .map_err(|_| SieveError::ResourceExhausted { candidates: count })?;
        vals.extend((1..=count).map(candidate_value));

        let mut short = false;
        for round in 2..m {
            if round > vals.len() {
                short = true;
                break;
            }
            let d = vals[round - 1] as usize;
            if d > vals.len() {
                // all later rounds have even larger moduli: nothing more
                // to delete inside this window
                break;
            }
            let mut i = 0usize;
            vals.retain(|_| {
                i += 1;
                !i.is_multiple_of(d)
            });
        }
        if !short && vals.len() >= prefix_len {
            vals.truncate(prefix_len);
            return Ok(IntermediateSequence { m, values: vals });
        }
        window = window + window / 4;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_ten_match_the_sieve_description() {
        let t = generate(10).unwrap();
        assert_eq!(t.values(), &[2, 3, 7, 9, 13, 15, 21, 25, 31, 33]);
    }

    #[test]
    fn single_entry_is_two() {
        assert_eq!(generate(1).unwrap().values(), &[2]);
        assert_eq!(naive_generate(1).unwrap().values(), &[2]);
    }

    #[test]
    fn zero_limit_rejected() {
        assert!(matches!(generate(0), Err(SieveError::ZeroLimit)));
        assert!(matches!(naive_generate(0), Err(SieveError::ZeroLimit)));
    }

    #[test]
    fn naive_first_five() {
        let t = naive_generate(5).unwrap();
        assert_eq!(t.values(), &[2, 3, 7, 9, 13]);
    }

    #[test]
    fn oracle_equivalence_small() {
        for n in [1usize, 2, 3, 4, 7, 10, 64, 100, 1000] {
            let fast = generate(n).unwrap();
            let slow = naive_generate(n).unwrap();
            assert_eq!(fast, slow, "mismatch at n={n}");
        }
    }

    #[test]
    fn classical_sequence_prefix() {
        // A000959 with the leading 1 replaced by 2.
        let classical = [
            1u64, 3, 7, 9, 13, 15, 21, 25, 31, 33, 37, 43, 49, 51, 63, 67, 69, 73, 75, 79, 87,
            93, 99, 105, 111, 115, 127, 129, 133, 135, 141, 151, 159, 163, 169, 171, 189, 193,
            195, 201,
        ];
        let t = generate(classical.len()).unwrap();
        assert_eq!(t.get(1), Some(2));
        for (i, &a) in classical.iter().enumerate().skip(1) {
            assert_eq!(t.get(i + 1), Some(a), "entry {}", i + 1);
        }
    }

    #[test]
    fn table_validation_catches_mutations() {
        let mut t = generate(50).unwrap();
        assert!(t.validate().is_ok());
        t.values[30] -= 1; // now even
        assert!(t.validate().is_err());

        let mut t = generate(50).unwrap();
        t.values[0] = 1; // classical convention, rejected here
        assert!(t.validate().is_err());

        let mut t = generate(50).unwrap();
        t.values[10] = t.values[11]; // breaks strict increase
        assert!(t.validate().is_err());
    }

    #[test]
    fn intermediate_round_two_is_two_plus_odds() {
        let s = intermediate(2, 5).unwrap();
        assert_eq!(s.values, vec![2, 3, 5, 7, 9]);
    }

    #[test]
    fn intermediate_round_three_by_hand() {
        // deleting every 3rd entry of 2,3,5,7,9,11,13,15,...
        let s = intermediate(3, 6).unwrap();
        assert_eq!(s.values, vec![2, 3, 7, 9, 13, 15]);
    }

    #[test]
    fn intermediate_rejects_round_below_two() {
        assert!(matches!(intermediate(1, 5), Err(SieveError::RoundTooSmall(1))));
    }

    #[test]
    fn intermediate_stabilizes_once_ell_m_exceeds_n() {
        // once ell_m > n the n-th entry of round m equals the n-th lucky
        // number, and stays there for every later round
        let table = generate(200).unwrap();
        for n in [1usize, 5, 17, 60, 120, 200] {
            // smallest round m >= 2 with ell_m > n
            let first = (2..).find(|&m| table.get(m).unwrap() > n as u64).unwrap();
            for m in [first, first + 3, first + 17] {
                let seq = intermediate(m, n).unwrap();
                assert_eq!(seq.get(n), table.get(n), "n={n}, m={m}");
            }
        }
    }

    #[test]
    fn subsequence_chain_deletes_every_ell_m_th() {
        let prefix = 200usize;
        for m in 2..=20usize {
            let cur = intermediate(m, prefix * 2).unwrap();
            let next = intermediate(m + 1, prefix).unwrap();
            let d = cur.values[m - 1] as usize;
            let expected: Vec<u64> = cur
                .values
                .iter()
                .enumerate()
                .filter(|(i, _)| (i + 1) % d != 0)
                .map(|(_, &v)| v)
                .take(prefix)
                .collect();
            assert_eq!(next.values[..expected.len()], expected[..], "m={m}");
        }
    }
}
