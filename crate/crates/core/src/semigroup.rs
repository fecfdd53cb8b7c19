//! Numerical semigroups `H = ⟨n_1, …, n_e⟩` and their first-order invariants.
//!
//! Everything is derived from the Apéry set with respect to the multiplicity,
//! stored as a residue table: `apery[r]` is the least element of `H` congruent
//! to `r` modulo `n_1`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::factorization::FactorizationEngine;

/// Residue tables larger than this are refused rather than allocated.
pub const MAX_MODULUS: i64 = 1 << 26;

const INF: i64 = i64::MAX;

/// Invariants computed eagerly at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupInvariants {
    pub frobenius: i64,
    pub genus: i64,
    pub pseudo_frobenius: Vec<i64>,
    #[serde(rename = "type")]
    pub type_: usize,
    pub is_symmetric: bool,
    pub is_almost_symmetric: bool,
}

/// `Ap(H, h)`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AperySet {
    pub modulus: i64,
    pub elements: Vec<i64>,
}

impl AperySet {
    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

#[derive(Clone)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    was_minimal: bool,
    apery: Vec<i64>,
    inv: SemigroupInvariants,
    engine: OnceLock<std::result::Result<Arc<FactorizationEngine>, Error>>,
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
    }
}

impl Eq for NumericalSemigroup {}

impl std::hash::Hash for NumericalSemigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.generators.hash(state);
    }
}

/// Least element of `⟨gens⟩` in each residue class mod `modulus`
/// (`i64::MAX` where the class is empty).
///
/// Round-robin update: adding a generator `a` only needs one pass around
/// each of the `gcd(a, modulus)` cycles of `r ↦ r + a`, started at the
/// cycle minimum.
pub(crate) fn residue_table(gens: &[i64], modulus: i64) -> Result<Vec<i64>> {
    if modulus <= 0 {
        return Err(Error::ZeroModulus);
    }
    if modulus > MAX_MODULUS {
        return Err(Error::InvalidParameter(format!(
            "modulus {modulus} exceeds the supported bound {MAX_MODULUS}"
        )));
    }
    let n = modulus as usize;
    let mut w = vec![INF; n];
    w[0] = 0;
    for &a in gens {
        add_generator(&mut w, a)?;
    }
    Ok(w)
}

fn add_generator(w: &mut [i64], a: i64) -> Result<()> {
    let n = w.len();
    let step = (a % n as i64) as usize;
    if step == 0 {
        return Ok(());
    }
    let d = step.gcd(&n);
    let cycle = n / d;
    for start in 0..d {
        // Locate the minimum of this cycle; the walk from there is a single pass.
        let mut best = start;
        let mut p = start;
        for _ in 0..cycle {
            if w[p] < w[best] {
                best = p;
            }
            p = (p + step) % n;
        }
        if w[best] == INF {
            continue;
        }
        let mut p = best;
        for _ in 0..cycle {
            let q = (p + step) % n;
            if w[p] != INF {
                let cand = w[p].checked_add(a).ok_or(Error::Overflow)?;
                if cand < w[q] {
                    w[q] = cand;
                }
            }
            p = q;
        }
    }
    Ok(())
}

impl NumericalSemigroup {
    /// Builds the canonical form: sorted, redundant generators removed.
    pub fn new(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(&bad) = raw.iter().find(|&&g| g <= 0) {
            return Err(Error::NonPositiveGenerator(bad));
        }
        let g = raw.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::GcdNotOne(g));
        }
        let mut sorted = raw.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let n1 = sorted[0];
        let mut table = residue_table(&[], n1)?;
        let mut generators = vec![n1];
        for &g in &sorted[1..] {
            // Only smaller generators can contribute to g.
            let r = (g % n1) as usize;
            if table[r] <= g {
                continue;
            }
            add_generator(&mut table, g)?;
            generators.push(g);
        }
        let was_minimal = generators.len() == raw.len();
        Ok(Self::from_minimal(generators, table, was_minimal))
    }

    fn from_minimal(generators: Vec<i64>, apery: Vec<i64>, was_minimal: bool) -> Self {
        let n1 = generators[0];
        let frobenius = apery.iter().max().copied().unwrap_or(0) - n1;
        let genus: i64 = apery.iter().map(|&w| w / n1).sum();
        let mut h = NumericalSemigroup {
            generators,
            was_minimal,
            apery,
            engine: OnceLock::new(),
            inv: SemigroupInvariants {
                frobenius,
                genus,
                pseudo_frobenius: Vec::new(),
                type_: 0,
                is_symmetric: false,
                is_almost_symmetric: false,
            },
        };
        let pf: Vec<i64> = (-1..=frobenius)
            .filter(|&f| !h.contains(f) && h.generators.iter().all(|&n| h.contains(f + n)))
            .collect();
        let t = pf.len();
        h.inv.is_symmetric = t == 1;
        h.inv.is_almost_symmetric = 2 * genus == frobenius + t as i64;
        h.inv.type_ = t;
        h.inv.pseudo_frobenius = pf;
        h
    }

    /// Wraps generators already known to be minimal and coprime together
    /// with the Apéry table of the first; the family enumeration produces
    /// these and its tests compare them against [`NumericalSemigroup::new`].
    pub(crate) fn from_minimal_unchecked(generators: Vec<i64>, apery: Vec<i64>) -> Self {
        Self::from_minimal(generators, apery, true)
    }

    /// Factorization enumerator over the canonical generators, built on first use.
    pub fn engine(&self) -> Result<&FactorizationEngine> {
        match self
            .engine
            .get_or_init(|| FactorizationEngine::new(&self.generators).map(Arc::new))
        {
            Ok(e) => Ok(e),
            Err(err) => Err(err.clone()),
        }
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> i64 {
        self.generators[i]
    }

    pub fn embedding_dim(&self) -> usize {
        self.generators.len()
    }

    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    /// Whether the input to [`NumericalSemigroup::new`] was already minimal.
    pub fn was_minimal(&self) -> bool {
        self.was_minimal
    }

    pub fn invariants(&self) -> &SemigroupInvariants {
        &self.inv
    }

    pub fn frobenius(&self) -> i64 {
        self.inv.frobenius
    }

    pub fn genus(&self) -> i64 {
        self.inv.genus
    }

    pub fn pseudo_frobenius(&self) -> &[i64] {
        &self.inv.pseudo_frobenius
    }

    pub fn type_(&self) -> usize {
        self.inv.type_
    }

    pub fn is_symmetric(&self) -> bool {
        self.inv.is_symmetric
    }

    pub fn is_almost_symmetric(&self) -> bool {
        self.inv.is_almost_symmetric
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n1 = self.generators[0];
        self.apery[(n % n1) as usize] <= n
    }

    /// `n ≤_H n'`, i.e. `n' − n ∈ H`.
    pub fn leq(&self, n: i64, n_prime: i64) -> bool {
        match n_prime.checked_sub(n) {
            Some(d) => self.contains(d),
            None => false,
        }
    }

    /// The residue table of `Ap(H, n_1)`, indexed by residue mod `n_1`.
    pub fn apery_table(&self) -> &[i64] {
        &self.apery
    }

    pub fn apery(&self, h: i64) -> Result<AperySet> {
        if h == 0 {
            return Err(Error::ZeroModulus);
        }
        if !self.contains(h) {
            return Err(Error::NotInSemigroup(h));
        }
        // Every element of Ap(H, h) is at most Fr + h.
        let mut elements = if h == self.multiplicity() {
            self.apery.clone()
        } else {
            (0..=self.frobenius() + h)
                .filter(|&w| self.contains(w) && !self.contains(w - h))
                .collect()
        };
        elements.sort_unstable();
        Ok(AperySet {
            modulus: h,
            elements,
        })
    }

    /// `deg_H(a) = Σ a_i n_i`.
    pub fn degree(&self, a: &ExponentVector) -> Result<i64> {
        if a.dim() != self.embedding_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.embedding_dim(),
                found: a.dim(),
            });
        }
        a.coords()
            .iter()
            .zip(&self.generators)
            .try_fold(0i64, |acc, (&c, &n)| {
                i64::from(c)
                    .checked_mul(n)
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(Error::Overflow)
            })
    }

    /// Position of each generator of `order` in the canonical (sorted) list.
    ///
    /// `order` must list the minimal generators in some order. The result
    /// `perm` satisfies `order[k] == generators()[perm[k]]`, so
    /// `a.permuted(&perm)` rewrites canonical coordinates in `order`.
    pub fn labeling(&self, order: &[i64]) -> Result<Vec<usize>> {
        let mut perm = Vec::with_capacity(order.len());
        for &g in order {
            let idx = self
                .generators
                .iter()
                .position(|&x| x == g)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("{g} is not a minimal generator"))
                })?;
            if perm.contains(&idx) {
                return Err(Error::InvalidParameter(format!("{g} listed twice")));
            }
            perm.push(idx);
        }
        if perm.len() != self.embedding_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.embedding_dim(),
                found: perm.len(),
            });
        }
        Ok(perm)
    }

    /// Gaps of `H` in ascending order.
    pub fn gaps(&self) -> Vec<i64> {
        (0..=self.frobenius().max(-1))
            .filter(|&x| !self.contains(x))
            .collect()
    }
}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// Parses a comma-separated list such as `"41,99,70,53"`; whitespace ignored.
pub fn parse_generators(s: &str) -> Result<Vec<i64>> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let cleaned = cleaned
        .trim_start_matches(['<', '('])
        .trim_end_matches(['>', ')']);
    if cleaned.is_empty() {
        return Err(Error::EmptyInput);
    }
    cleaned
        .split(',')
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Error::Parse(format!("'{tok}' is not an integer")))
        })
        .collect()
}

impl FromStr for NumericalSemigroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NumericalSemigroup::new(&parse_generators(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent membership oracle: boolean DP over `0..=limit`.
    fn dp_members(gens: &[i64], limit: i64) -> Vec<bool> {
        let mut reach = vec![false; limit as usize + 1];
        reach[0] = true;
        for x in 1..=limit as usize {
            reach[x] = gens
                .iter()
                .any(|&g| g as usize <= x && reach[x - g as usize]);
        }
        reach
    }

    fn h(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn canonical_form() {
        let s = h(&[3, 4, 5]);
        assert_eq!(s.generators(), &[3, 4, 5]);
        assert!(s.was_minimal());

        let s = h(&[1, 7]);
        assert_eq!(s.generators(), &[1]);
        assert_eq!(s.embedding_dim(), 1);
        assert_eq!(s.frobenius(), -1);
        assert_eq!(s.pseudo_frobenius(), &[-1]);
        assert!(s.is_symmetric());

        // 9 = 4 + 5 is dropped; confirmed against the DP oracle below.
        let s = h(&[4, 6, 5, 9]);
        assert_eq!(s.generators(), &[4, 5, 6]);
        assert!(!s.was_minimal());
        assert!(dp_members(&[4, 5], 9)[9]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(NumericalSemigroup::new(&[]), Err(Error::EmptyInput));
        assert_eq!(NumericalSemigroup::new(&[4, 6]), Err(Error::GcdNotOne(2)));
        assert_eq!(
            NumericalSemigroup::new(&[0, 3]),
            Err(Error::NonPositiveGenerator(0))
        );
        assert!("0,3".parse::<NumericalSemigroup>().unwrap_err().is_usage());
        assert!("a,3".parse::<NumericalSemigroup>().unwrap_err().is_usage());
    }

    #[test]
    fn membership() {
        let s = h(&[3, 4, 5]);
        assert!(!s.contains(2));
        assert!(s.contains(0));
        assert!(!s.contains(-3));
        let mc = h(&[6, 9, 20]);
        let oracle = dp_members(&[6, 9, 20], 60);
        assert!(!oracle[43] && oracle[44]);
        assert!(!mc.contains(43));
        assert!(mc.contains(44));
        assert!(mc.leq(1, 45));
        assert!(!mc.leq(1, 44));
    }

    #[test]
    fn apery_sets() {
        assert_eq!(h(&[2, 3]).apery(2).unwrap().elements, vec![0, 3]);
        assert_eq!(h(&[3, 4, 5]).apery(3).unwrap().elements, vec![0, 4, 5]);
        assert_eq!(h(&[3, 4, 5]).apery(1), Err(Error::NotInSemigroup(1)));
        assert_eq!(h(&[3, 4, 5]).apery(0), Err(Error::ZeroModulus));
    }

    #[test]
    fn worked_invariants() {
        let s = h(&[11, 13, 17]);
        assert_eq!(s.pseudo_frobenius(), &[49, 53]);
        assert_eq!(s.type_(), 2);

        assert_eq!(h(&[2, 3]).frobenius(), 2 * 3 - 2 - 3);

        let s = h(&[4, 6, 5]);
        assert_eq!(s.frobenius(), 7);
        assert!(s.is_symmetric());

        assert_eq!(h(&[41, 99, 70, 53]).frobenius(), 1019);
    }

    #[test]
    fn labeling_maps_input_order() {
        let s = h(&[41, 99, 70, 53]);
        let perm = s.labeling(&[41, 99, 70, 53]).unwrap();
        assert_eq!(perm, vec![0, 3, 2, 1]);
        assert!(s.labeling(&[41, 99, 70]).is_err());
    }

    fn coprime_gens() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(1i64..=60, 1..6)
            .prop_filter("gcd 1", |v| v.iter().fold(0i64, |a, &b| a.gcd(&b)) == 1)
    }

    proptest! {
        #[test]
        fn invariants_match_dp_oracle(gens in coprime_gens()) {
            let s = NumericalSemigroup::new(&gens).unwrap();
            let n1 = s.multiplicity();
            let ne = *s.generators().last().unwrap();
            let limit = n1 * ne + ne;
            let members = dp_members(&gens, limit);
            let fr = (0..=limit).rev().find(|&x| !members[x as usize]).unwrap_or(-1);
            prop_assert_eq!(s.frobenius(), fr);
            let genus = members.iter().filter(|&&m| !m).count() as i64;
            prop_assert_eq!(s.genus(), genus);
            for x in 0..=limit {
                prop_assert_eq!(s.contains(x), members[x as usize]);
            }
            // Minimal generators: members not a sum of two nonzero members.
            let minimal: Vec<i64> = (1..=limit)
                .filter(|&x| members[x as usize]
                    && !(1..x).any(|y| members[y as usize] && members[(x - y) as usize]))
                .collect();
            prop_assert_eq!(s.generators(), minimal.as_slice());
            // PF from the maximal Apéry elements.
            let ap = s.apery(n1).unwrap();
            let mut pf: Vec<i64> = ap.elements.iter()
                .filter(|&&w| s.generators().iter().all(|&n| !ap.contains(w + n)))
                .map(|&w| w - n1)
                .collect();
            pf.sort_unstable();
            prop_assert_eq!(s.pseudo_frobenius(), pf.as_slice());
        }

        #[test]
        fn apery_and_symmetry_laws(gens in coprime_gens(), k in 0usize..4) {
            let s = NumericalSemigroup::new(&gens).unwrap();
            let hmod = s.generators()[k % s.embedding_dim()];
            let ap = s.apery(hmod).unwrap();
            prop_assert_eq!(ap.elements.len() as i64, hmod);
            prop_assert_eq!(*ap.elements.last().unwrap(), s.frobenius() + hmod);
            for &a in &ap.elements {
                prop_assert!(s.contains(a) && !s.contains(a - hmod));
            }
            let fr = s.frobenius();
            prop_assert_eq!(s.pseudo_frobenius().last().copied(), Some(fr));
            prop_assert!(2 * s.genus() >= fr + s.type_() as i64);
            let by_type = s.type_() == 1;
            let by_genus = 2 * s.genus() == fr + 1;
            let by_reflection = (0..=fr).all(|z| s.contains(z) != s.contains(fr - z));
            prop_assert_eq!(by_type, by_genus);
            prop_assert_eq!(by_type, by_reflection);
            for x in s.gaps() {
                prop_assert!(s.pseudo_frobenius().iter().any(|&f| s.leq(x, f)));
            }
        }
    }
}
