//! Exact sparse row echelon form over the rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// A sparse vector: column index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, BigRational>;

/// Incrementally maintained echelon basis of a row space.
#[derive(Debug, Default, Clone)]
pub struct SparseEchelon {
    /// Pivot column to its normalized row (pivot coefficient 1).
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the remainder has no pivot columns.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0;
        loop {
            let Some((&col, coeff)) = v.range(cursor..).next() else {
                return v;
            };
            let coeff = coeff.clone();
            match self.rows.get(&col) {
                Some(row) => {
                    for (&c, x) in row {
                        let entry = v.entry(c).or_insert_with(BigRational::zero);
                        *entry -= &coeff * x;
                        if entry.is_zero() {
                            v.remove(&c);
                        }
                    }
                }
                None => cursor = col + 1,
            }
        }
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let inv = BigRational::one() / lead;
        let r: SparseVec = r.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.rows.insert(pivot, r);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn vec_of(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(c, x)| (c, q(x))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let mut m = SparseEchelon::new();
        assert!(m.insert(vec_of(&[(0, 1), (1, 2)])));
        assert!(m.insert(vec_of(&[(1, 1), (2, 3)])));
        assert!(!m.insert(vec_of(&[(0, 2), (1, 5), (2, 3)])));
        assert!(!m.insert(SparseVec::new()));
        assert!(m.insert(vec_of(&[(2, 7)])));
        assert_eq!(m.rank(), 3);
        assert!(m.contains(vec_of(&[(0, 5)])));
    }
}
