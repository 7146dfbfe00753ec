//! Bit array with Fenwick-indexed rank/select, used to realize the
//! "delete every d-th survivor" step of the lucky sieve in O(log n)
//! per deletion.

/// Bit array over positions `1..=len` with a Fenwick (binary indexed)
/// tree of prefix population counts on top.
///
/// Supports `rank` (ones in a prefix), `select` (position of the k-th
/// one) and `clear` in O(log len). All positions start set.
#[derive(Debug)]
pub struct RankSelect {
    /// Fenwick tree, 1-based; `tree[i]` covers `lowbit(i)` positions.
    tree: Vec<u32>,
    /// Raw bits, position p lives at `bits[(p-1)/64]` bit `(p-1)%64`.
    bits: Vec<u64>,
    len: usize,
    ones: usize,
    /// Largest power of two `<= len`, cached for `select`.
    top: usize,
}

impl RankSelect {
    /// Creates the structure with all `len` positions set.
    ///
    /// Returns `None` if the backing allocations fail, so callers can
    /// surface a resource-exhaustion error instead of aborting.
    pub fn new_all_set(len: usize) -> Option<Self> {
        let mut tree: Vec<u32> = Vec::new();
        tree.try_reserve_exact(len + 1).ok()?;
        tree.push(0);
        // With every leaf equal to 1, node i holds exactly lowbit(i) ones.
        for i in 1..=len {
            tree.push((i & i.wrapping_neg()) as u32);
        }
        let words = len / 64 + 1;
        let mut bits: Vec<u64> = Vec::new();
        bits.try_reserve_exact(words).ok()?;
        bits.resize(words, !0u64);
        let mut top = 1usize;
        while top * 2 <= len {
            top *= 2;
        }
        Some(RankSelect {
            tree,
            bits,
            len,
            ones: len,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of set positions.
    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn is_set(&self, pos: usize) -> bool {
        debug_assert!(pos >= 1 && pos <= self.len);
        self.bits[(pos - 1) / 64] >> ((pos - 1) % 64) & 1 == 1
    }

    /// Count of set positions in `1..=pos`.
    pub fn rank(&self, pos: usize) -> usize {
        debug_assert!(pos <= self.len);
        let mut i = pos;
        let mut sum = 0usize;
        while i > 0 {
            sum += self.tree[i] as usize;
            i &= i - 1;
        }
        sum
    }

    /// Position of the k-th set bit (1-based), or `None` if `k > ones()`.
    pub fn select(&self, k: usize) -> Option<usize> {
        if k == 0 || k > self.ones {
            return None;
        }
        let mut pos = 0usize;
        let mut rem = k;
        let mut pw = self.top;
        while pw > 0 {
            let next = pos + pw;
            if next <= self.len && (self.tree[next] as usize) < rem {
                rem -= self.tree[next] as usize;
                pos = next;
            }
            pw /= 2;
        }
        Some(pos + 1)
    }

    /// Clears position `pos`; no-op if already clear.
    pub fn clear(&mut self, pos: usize) {
        debug_assert!(pos >= 1 && pos <= self.len);
        let (w, b) = ((pos - 1) / 64, (pos - 1) % 64);
        if self.bits[w] >> b & 1 == 0 {
            return;
        }
        self.bits[w] &= !(1u64 << b);
        self.ones -= 1;
        let mut i = pos;
        while i <= self.len {
            self.tree[i] -= 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Iterator over set positions in increasing order.
    pub fn iter_set(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .flat_map(move |(w, &word)| {
                let mut word = word;
                let mut out = Vec::with_capacity(word.count_ones() as usize);
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    out.push(w * 64 + b + 1);
                    word &= word - 1;
                }
                out
            })
            .filter(move |&p| p <= self.len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_select_on_fresh_structure() {
        let rs = RankSelect::new_all_set(100).unwrap();
        assert_eq!(rs.ones(), 100);
        assert_eq!(rs.rank(100), 100);
        assert_eq!(rs.rank(37), 37);
        assert_eq!(rs.select(1), Some(1));
        assert_eq!(rs.select(100), Some(100));
        assert_eq!(rs.select(101), None);
    }

    #[test]
    fn clear_updates_rank_and_select() {
        let mut rs = RankSelect::new_all_set(10).unwrap();
        rs.clear(3);
        rs.clear(7);
        rs.clear(7); // idempotent
        assert_eq!(rs.ones(), 8);
        assert_eq!(rs.rank(10), 8);
        assert_eq!(rs.select(3), Some(4));
        assert_eq!(rs.iter_set().collect::<Vec<_>>(), vec![1, 2, 4, 5, 6, 8, 9, 10]);
    }

    proptest! {
        // rank(end) equals the population count, and select(rank(p)) = p
        // for every surviving position p, under arbitrary deletions.
        #[test]
        fn rank_select_inverse(len in 1usize..600, dels in proptest::collection::vec(1usize..600, 0..200)) {
            let mut rs = RankSelect::new_all_set(len).unwrap();
            let mut reference: Vec<bool> = vec![true; len + 1];
            for d in dels {
                if d <= len {
                    rs.clear(d);
                    reference[d] = false;
                }
            }
            let pop = reference[1..].iter().filter(|&&b| b).count();
            prop_assert_eq!(rs.ones(), pop);
            prop_assert_eq!(rs.rank(len), pop);
            let mut k = 0;
            for (p, &alive) in reference.iter().enumerate().skip(1) {
                if alive {
                    k += 1;
                    prop_assert_eq!(rs.rank(p), k);
                    prop_assert_eq!(rs.select(k), Some(p));
                }
            }
        }
    }
}
