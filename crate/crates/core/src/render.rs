//! Text and JSON renderings shared by the CLI and tests, and the input-order
//! relabeling of exponent vectors.

use serde::{Deserialize, Serialize};

use crate::exponent::ExponentVector;
use crate::polynomial::InversePolynomial;
use crate::semigroup::NumericalSemigroup;

/// The JSON summary of a semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupSummary {
    pub generators: Vec<i64>,
    pub frobenius: i64,
    pub genus: i64,
    pub pf: Vec<i64>,
    #[serde(rename = "type")]
    pub type_: usize,
    pub symmetric: bool,
    pub almost_symmetric: bool,
}

impl SemigroupSummary {
    /// Generators are listed in `labeling` order.
    pub fn new(h: &NumericalSemigroup, labeling: &Labeling) -> Self {
        SemigroupSummary {
            generators: labeling.generators(h),
            frobenius: h.frobenius(),
            genus: h.genus(),
            pf: h.pseudo_frobenius().to_vec(),
            type_: h.type_(),
            symmetric: h.is_symmetric(),
            almost_symmetric: h.is_almost_symmetric(),
        }
    }

    pub fn to_text(&self) -> String {
        let list = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(", ");
        format!(
            "generators: <{}>\nfrobenius: {}\ngenus: {}\npseudo-frobenius: {{{}}}\ntype: {}\nsymmetric: {}\nalmost symmetric: {}",
            list(&self.generators),
            self.frobenius,
            self.genus,
            list(&self.pf),
            self.type_,
            self.symmetric,
            self.almost_symmetric
        )
    }
}

/// Variable order used for output: `X_k` stands for the generator
/// `generators()[perm[k]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    perm: Vec<usize>,
}

impl Labeling {
    pub fn canonical(h: &NumericalSemigroup) -> Self {
        Labeling {
            perm: (0..h.embedding_dim()).collect(),
        }
    }

    /// The order the generators were given in, when that list was a minimal
    /// generating system without repeats; the canonical order otherwise.
    pub fn for_input(h: &NumericalSemigroup, raw: &[i64]) -> Self {
        if h.was_minimal() {
            if let Ok(perm) = h.labeling(raw) {
                return Labeling { perm };
            }
        }
        Self::canonical(h)
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn generators(&self, h: &NumericalSemigroup) -> Vec<i64> {
        self.perm.iter().map(|&c| h.generator(c)).collect()
    }

    /// Canonical coordinates to labeled ones.
    pub fn exponent(&self, a: &ExponentVector) -> ExponentVector {
        a.permuted(&self.perm)
    }

    /// Labeled coordinates to canonical ones.
    pub fn canonical_exponent(&self, a: &ExponentVector) -> ExponentVector {
        let mut out = vec![0u32; a.dim()];
        for (k, &c) in self.perm.iter().enumerate() {
            out[c] = a.get(k);
        }
        ExponentVector::new(out)
    }

    /// Labeled index of the canonical index `c`.
    pub fn position(&self, c: usize) -> usize {
        self.perm
            .iter()
            .position(|&x| x == c)
            .expect("a permutation")
    }

    pub fn polynomial(&self, j: &InversePolynomial) -> InversePolynomial {
        j.permuted(&self.perm)
    }
}
