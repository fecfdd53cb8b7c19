//! Membership bitmaps of a semigroup on an initial segment, for word-level
//! degree-set and Apéry-set computations.

use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone)]
pub(crate) struct MembershipBits {
    len: usize,
    words: Vec<u64>,
    /// Bit `k` is set when `len − 1 − k ∈ H`.
    reversed: Vec<u64>,
}

/// Bits `shift..shift + 64` of `words`.
fn window(words: &[u64], w: usize, shift: usize) -> u64 {
    let (q, r) = (shift / 64, shift % 64);
    let lo = words.get(w + q).copied().unwrap_or(0);
    if r == 0 {
        return lo;
    }
    let hi = words.get(w + q + 1).copied().unwrap_or(0);
    (lo >> r) | (hi << (64 - r))
}

impl MembershipBits {
    /// Membership of `0..len`.
    pub(crate) fn new(h: &NumericalSemigroup, len: usize) -> Self {
        let n = len.div_ceil(64).max(1);
        let mut words = vec![0u64; n];
        let mut reversed = vec![0u64; n];
        for y in 0..len {
            if h.contains(y as i64) {
                words[y / 64] |= 1 << (y % 64);
                let k = len - 1 - y;
                reversed[k / 64] |= 1 << (k % 64);
            }
        }
        MembershipBits {
            len,
            words,
            reversed,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.len
    }

    fn mask_upto(&self, top: usize) -> Vec<u64> {
        (0..self.words.len())
            .map(|w| {
                let lo = w * 64;
                if top + 1 >= lo + 64 {
                    u64::MAX
                } else if top < lo {
                    0
                } else {
                    (1u64 << (top + 1 - lo)) - 1
                }
            })
            .collect()
    }

    /// `{y ∈ H : m − y ∈ H}` as bits; needs `m < len`.
    pub(crate) fn degree_set(&self, m: usize) -> Vec<u64> {
        assert!(m < self.len, "degree set beyond the bitmap");
        // bit (m − y) of words = bit (len − 1 − m + y) of reversed.
        let shift = self.len - 1 - m;
        let mask = self.mask_upto(m);
        (0..self.words.len())
            .map(|w| self.words[w] & window(&self.reversed, w, shift) & mask[w])
            .collect()
    }

    /// `Ap(H, n)` as bits; needs `Fr + n < len`.
    pub(crate) fn apery(&self, n: usize) -> Vec<u64> {
        let (q, r) = (n / 64, n % 64);
        (0..self.words.len())
            .map(|w| {
                // bit y of (words << n) is bit y − n of words.
                let hi = if w >= q { self.words[w - q] } else { 0 };
                let lo = if w > q { self.words[w - q - 1] } else { 0 };
                let shifted = if r == 0 {
                    hi
                } else {
                    (hi << r) | (lo >> (64 - r))
                };
                self.words[w] & !shifted
            })
            .collect()
    }
}

pub(crate) fn count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

pub(crate) fn ones(words: &[u64]) -> Vec<i64> {
    let mut out = Vec::new();
    for (w, &word) in words.iter().enumerate() {
        let mut rest = word;
        while rest != 0 {
            out.push((w * 64) as i64 + i64::from(rest.trailing_zeros()));
            rest &= rest - 1;
        }
    }
    out
}
