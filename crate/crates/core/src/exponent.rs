//! Exponent vectors `a ∈ ℕ^e`, shared by monomials `x^a` of the polynomial
//! ring and inverse monomials `X^a`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A factorization / exponent vector. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Self {
        ExponentVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    /// The `i`-th unit vector (zero-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `ord(a) = Σ a_i`.
    pub fn ord(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    /// Weighted degree `Σ a_i w_i`; with the generators as weights this is `deg_H`.
    pub fn degree(&self, weights: &[i64]) -> i64 {
        debug_assert_eq!(weights.len(), self.0.len());
        self.0
            .iter()
            .zip(weights)
            .map(|(&c, &w)| i64::from(c) * w)
            .sum()
    }

    /// Componentwise `self ≤ other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other - self` when `self ≤ other`.
    pub fn cofactor_in(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if !self.divides(other) {
            return None;
        }
        Some(ExponentVector(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.0.len(), other.0.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Indices `i` with `a_i > 0`.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
    }

    pub fn shares_support(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).any(|(&a, &b)| a > 0 && b > 0)
    }

    /// Reorders coordinates: the `k`-th coordinate of the result is the
    /// `perm[k]`-th coordinate of `self`.
    pub fn permuted(&self, perm: &[usize]) -> ExponentVector {
        ExponentVector(perm.iter().map(|&p| self.0[p]).collect())
    }

    /// Concatenation, used for products over disjoint blocks of variables.
    pub fn concat(&self, other: &ExponentVector) -> ExponentVector {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ExponentVector(v)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl<const N: usize> From<[u32; N]> for ExponentVector {
    fn from(v: [u32; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
