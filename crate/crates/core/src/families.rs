//! Exhaustive enumeration of numerical semigroups with bounded multiplicity
//! and Frobenius number.
//!
//! Walks the tree in which the children of `H` are `H ∖ {g}` for the
//! minimal generators `g > Fr(H)`. Every semigroup other than `ℕ` has
//! exactly one parent, `H ∪ {Fr(H)}`, Frobenius numbers strictly increase
//! along edges and multiplicities never decrease, so both bounds prune.

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// Elements `0 < x < 128` as bits; everything above the Frobenius number is
/// present.
#[derive(Debug, Clone, Copy)]
struct Node {
    elems: u128,
    frobenius: i64,
    multiplicity: i64,
}

impl Node {
    fn minimal_generators(&self) -> Vec<i64> {
        let limit = (self.frobenius + self.multiplicity).max(self.multiplicity);
        let mut sums = 0u128;
        let mut rest = self.elems;
        while rest != 0 {
            let y = rest.trailing_zeros() as i64;
            if 2 * y > limit {
                break;
            }
            sums |= self.elems << y;
            rest &= rest - 1;
        }
        let mut out = Vec::new();
        let mut gens = self.elems & !sums;
        while gens != 0 {
            let g = gens.trailing_zeros() as i64;
            if g > limit {
                break;
            }
            out.push(g);
            gens &= gens - 1;
        }
        out
    }

    fn contains(&self, x: i64) -> bool {
        x == 0 || (x > 0 && (x > self.frobenius || self.elems >> x & 1 == 1))
    }

    fn semigroup(&self, generators: Vec<i64>) -> NumericalSemigroup {
        let m = self.multiplicity;
        let apery = (0..m)
            .map(|r| {
                (0..)
                    .map(|k| r + k * m)
                    .find(|&x| self.contains(x))
                    .expect("cofinite")
            })
            .collect();
        NumericalSemigroup::from_minimal_unchecked(generators, apery)
    }
}

/// Calls `f` on every numerical semigroup with multiplicity at most
/// `max_multiplicity` and Frobenius number at most `max_frobenius`,
/// including `ℕ` itself.
pub fn for_each_semigroup<F>(max_multiplicity: i64, max_frobenius: i64, mut f: F) -> Result<()>
where
    F: FnMut(&NumericalSemigroup),
{
    if max_multiplicity < 1 || max_frobenius + max_multiplicity >= 128 {
        return Err(Error::InvalidParameter(format!(
            "enumeration needs 1 <= multiplicity and Fr + multiplicity < 128, got {max_multiplicity}, {max_frobenius}"
        )));
    }
    let mut stack = vec![Node {
        elems: !1u128,
        frobenius: -1,
        multiplicity: 1,
    }];
    while let Some(node) = stack.pop() {
        let gens = node.minimal_generators();
        for &g in gens.iter().rev() {
            if g <= node.frobenius || g > max_frobenius {
                continue;
            }
            let elems = node.elems & !(1u128 << g);
            let multiplicity = if g == node.multiplicity {
                elems.trailing_zeros() as i64
            } else {
                node.multiplicity
            };
            if multiplicity <= max_multiplicity {
                stack.push(Node {
                    elems,
                    frobenius: g,
                    multiplicity,
                });
            }
        }
        f(&node.semigroup(gens));
    }
    Ok(())
}

/// The semigroups of [`for_each_semigroup`] collected and sorted by
/// generator list.
pub fn semigroups(max_multiplicity: i64, max_frobenius: i64) -> Result<Vec<NumericalSemigroup>> {
    let mut out = Vec::new();
    for_each_semigroup(max_multiplicity, max_frobenius, |h| out.push(h.clone()))?;
    out.sort_by(|a, b| a.generators().cmp(b.generators()));
    Ok(out)
}

/// Symmetric semigroups within the bounds, sorted by generator list.
pub fn symmetric_semigroups(
    max_multiplicity: i64,
    max_frobenius: i64,
) -> Result<Vec<NumericalSemigroup>> {
    let mut out = Vec::new();
    for_each_semigroup(max_multiplicity, max_frobenius, |h| {
        if h.is_symmetric() {
            out.push(h.clone());
        }
    })?;
    out.sort_by(|a, b| a.generators().cmp(b.generators()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    /// Independent count over every subset of `[1, Fr)` that, with `0` and
    /// everything above `Fr`, is closed under addition.
    fn brute_force_count(max_m: i64, max_fr: i64) -> usize {
        let mut count = 0;
        for fr in -1..=max_fr {
            if fr < 1 {
                count += usize::from(fr == -1);
                continue;
            }
            // Bit k set means k + 1 is in the semigroup, for 1 <= k + 1 < fr.
            for mask in 0u64..(1u64 << (fr - 1)) {
                let inside = |x: i64| x == 0 || x > fr || (x < fr && mask >> (x - 1) & 1 == 1);
                let closed = (1..fr).filter(|&a| inside(a)).all(|a| {
                    (a..fr)
                        .filter(|&b| inside(b))
                        .all(|b| a + b > fr || (a + b < fr && inside(a + b)))
                });
                if !closed {
                    continue;
                }
                let m = (1..).find(|&x| inside(x)).unwrap();
                if m <= max_m {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        for (m, fr) in [(4, 9), (6, 12), (20, 14)] {
            let mut n = 0;
            for_each_semigroup(m, fr, |_| n += 1).unwrap();
            assert_eq!(n, brute_force_count(m, fr), "m <= {m}, Fr <= {fr}");
        }
    }

    #[test]
    fn enumeration_is_consistent_with_direct_construction() {
        let all = semigroups(6, 15).unwrap();
        let distinct: HashSet<_> = all.iter().map(|h| h.generators().to_vec()).collect();
        assert_eq!(distinct.len(), all.len());
        for h in &all {
            let direct = NumericalSemigroup::new(h.generators()).unwrap();
            assert_eq!(direct.generators(), h.generators());
            assert_eq!(direct.apery_table(), h.apery_table());
            assert_eq!(direct.invariants(), h.invariants());
            assert!(h.multiplicity() <= 6 && h.frobenius() <= 15);
        }
        assert!(all.iter().any(|h| h.generators() == [1]));
    }

    #[test]
    fn symmetric_family_contains_known_members() {
        let sym = symmetric_semigroups(5, 20).unwrap();
        for g in [&[3, 4][..], &[5, 6, 7, 8], &[4, 5, 6], &[2, 3]] {
            assert!(sym.iter().any(|h| h.generators() == g), "{g:?}");
        }
        assert!(sym.iter().all(|h| h.is_symmetric()));
    }

    #[test]
    fn rejects_bounds_beyond_the_bit_width() {
        assert!(for_each_semigroup(10, 120, |_| ()).is_err());
        assert!(for_each_semigroup(0, 10, |_| ()).is_err());
    }
}
