//! Factorizations of semigroup elements and a minimal binomial generating
//! system of the defining ideal `I_H`.
//!
//! Enumeration is output-sensitive: each suffix of the weight list carries a
//! residue table for its own (possibly non-numerical) semigroup, so every
//! branch of the search reaches at least one factorization.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dsu::support_components;
use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::semigroup::{residue_table, NumericalSemigroup};

/// Membership in `⟨w_k, …, w_{e-1}⟩` for one suffix of the weights.
#[derive(Debug, Clone)]
struct SuffixTable {
    /// gcd of the suffix; 0 for the empty suffix.
    g: i64,
    /// Smallest scaled weight, the modulus of `table`.
    m: i64,
    table: Vec<i64>,
}

impl SuffixTable {
    fn contains(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        if self.g == 0 {
            return x == 0;
        }
        if x % self.g != 0 {
            return false;
        }
        let y = x / self.g;
        self.table[(y % self.m) as usize] <= y
    }
}

/// Precomputed pruning data for enumerating `{a : Σ a_i w_i = n}`.
#[derive(Debug, Clone)]
pub struct FactorizationEngine {
    weights: Vec<i64>,
    suffix: Vec<SuffixTable>,
}

impl FactorizationEngine {
    /// Weights must be positive; order is the coordinate order of the output.
    pub fn new(weights: &[i64]) -> Result<Self> {
        if let Some(&bad) = weights.iter().find(|&&w| w <= 0) {
            return Err(Error::NonPositiveGenerator(bad));
        }
        let e = weights.len();
        let mut suffix = Vec::with_capacity(e + 1);
        for k in 0..=e {
            let tail = &weights[k..];
            let g = tail.iter().fold(0i64, |acc, &w| acc.gcd(&w));
            if g == 0 {
                suffix.push(SuffixTable {
                    g: 0,
                    m: 1,
                    table: vec![0],
                });
                continue;
            }
            let scaled: Vec<i64> = tail.iter().map(|&w| w / g).collect();
            let m = *scaled.iter().min().unwrap();
            let table = residue_table(&scaled, m)?;
            suffix.push(SuffixTable { g, m, table });
        }
        Ok(FactorizationEngine {
            weights: weights.to_vec(),
            suffix,
        })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Whether `n` is a nonnegative combination of the weights.
    pub fn is_representable(&self, n: i64) -> bool {
        self.suffix[0].contains(n)
    }

    /// Visits factorizations of `n` in lexicographic order until `f` breaks.
    pub fn for_each<F>(&self, n: i64, mut f: F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if !self.is_representable(n) {
            return Ok(ControlFlow::Continue(()));
        }
        if let Some(&w) = self.weights.iter().min() {
            if n / w > i64::from(u32::MAX) {
                return Err(Error::Overflow);
            }
        }
        let mut buf = vec![0u32; self.weights.len()];
        Ok(self.rec(0, n, &mut buf, &mut f))
    }

    fn rec<F>(&self, k: usize, rem: i64, buf: &mut [u32], f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let e = self.weights.len();
        if k == e {
            return f(buf);
        }
        let w = self.weights[k];
        if k + 1 == e {
            buf[k] = (rem / w) as u32;
            let flow = f(buf);
            buf[k] = 0;
            return flow;
        }
        let next = &self.suffix[k + 1];
        let mut r = rem;
        let mut a = 0u32;
        while r >= 0 {
            if next.contains(r) {
                buf[k] = a;
                if self.rec(k + 1, r, buf, f).is_break() {
                    buf[k] = 0;
                    return ControlFlow::Break(());
                }
            }
            a += 1;
            r -= w;
        }
        buf[k] = 0;
        ControlFlow::Continue(())
    }

    /// All factorizations of `n`, lexicographically ordered.
    pub fn factorizations(&self, n: i64) -> Result<Vec<ExponentVector>> {
        let mut out = Vec::new();
        let _ = self.for_each(n, |a| {
            out.push(ExponentVector::new(a.to_vec()));
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// Number of factorizations, stopping once `cap` is reached.
    pub fn count_up_to(&self, n: i64, cap: usize) -> Result<usize> {
        let mut count = 0;
        let _ = self.for_each(n, |_| {
            count += 1;
            if count >= cap {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(count)
    }
}

/// All `a ∈ ℕ^e` with `deg_H(a) = n`, in lexicographic order. Empty when
/// `n ∉ H`.
pub fn factorizations(h: &NumericalSemigroup, n: i64) -> Result<Vec<ExponentVector>> {
    h.engine()?.factorizations(n)
}

/// Whether `n` has exactly one factorization.
pub fn has_unique_factorization(h: &NumericalSemigroup, n: i64) -> Result<bool> {
    Ok(h.engine()?.count_up_to(n, 2)? == 1)
}

/// The denumerant `#{a : deg_H(a) = n}` by the coin-change recurrence.
pub fn denumerant(h: &NumericalSemigroup, n: i64) -> BigUint {
    if n < 0 {
        return BigUint::zero();
    }
    let n = n as usize;
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for &g in h.generators() {
        let g = g as usize;
        for x in g..=n {
            let (lo, hi) = ways.split_at_mut(x);
            hi[0] += &lo[x - g];
        }
    }
    ways.swap_remove(n)
}

/// An `H`-homogeneous binomial `x^lhs − x^rhs`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Binomial {
    pub degree: i64,
    pub lhs: ExponentVector,
    pub rhs: ExponentVector,
}

/// A minimal binomial generating system of `I_H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialIdealPresentation {
    pub generators: Vec<Binomial>,
    pub mu: usize,
    pub betti_degrees: Vec<i64>,
}

/// Candidate degrees `w + n_j` with `w ∈ Ap(H, n_i)` and `j ≠ i`. Every
/// minimal generator of `(I_H + (x_i))/(x_i)` lives in one of these.
fn candidate_degrees(h: &NumericalSemigroup, i: usize) -> Result<Vec<i64>> {
    let ni = h.generator(i);
    let ap = if i == 0 {
        h.apery_table().to_vec()
    } else {
        residue_table(h.generators(), ni)?
    };
    let mut degrees: Vec<i64> = ap
        .iter()
        .flat_map(|&w| {
            h.generators()
                .iter()
                .enumerate()
                .filter(move |&(j, _)| j != i)
                .map(move |(_, &n)| w + n)
        })
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    Ok(degrees)
}

/// `μ_d` of the Artinian reduction `(I_H + (x_i))/(x_i)` at every degree
/// where it is nonzero.
///
/// In degree `d` the piece `Ī_d` is spanned by differences of monomials when
/// `d ∈ Ap(H, n_i)` and is everything otherwise; `(mĪ)_d` is spanned by
/// `x_j·(x^a − x^b)` and by `x_j·x^a` with `x^a` already zero. The rank of
/// such a span of differences and basis vectors is the vertex count minus the
/// number of difference-components containing no basis vector.
pub fn artinian_mu_by_degree(h: &NumericalSemigroup, i: usize) -> Result<BTreeMap<i64, usize>> {
    let e = h.embedding_dim();
    if e < 2 {
        return Err(Error::NotApplicable("I_H = 0 when e = 1"));
    }
    if i >= e {
        return Err(Error::InvalidParameter(format!(
            "variable index {} out of range 1..={e}",
            i + 1
        )));
    }
    let ni = h.generator(i);
    let others: Vec<i64> = (0..e).filter(|&j| j != i).map(|j| h.generator(j)).collect();
    let engine = FactorizationEngine::new(&others)?;
    let bound = h.frobenius() + ni + h.generators()[e - 1];
    let mut out = BTreeMap::new();
    for d in candidate_degrees(h, i)? {
        if d > bound {
            return Err(Error::violation(
                "generator degree bound",
                format!("candidate degree {d} exceeds Fr+n_i+n_e = {bound} for {h}"),
            ));
        }
        let facts = engine.factorizations(d)?;
        if facts.is_empty() {
            continue;
        }
        let views: Vec<&[u32]> = facts.iter().map(|a| a.coords()).collect();
        let (label, comps) = support_components(&views);
        let mu_d = if !h.contains(d - ni) {
            comps - 1
        } else {
            let mut killed = vec![false; comps];
            for (a, &c) in facts.iter().zip(&label) {
                if killed[c] {
                    continue;
                }
                if a.support().any(|j| h.contains(d - others[j] - ni)) {
                    killed[c] = true;
                }
            }
            killed.iter().filter(|&&k| !k).count()
        };
        if mu_d > 0 {
            out.insert(d, mu_d);
        }
    }
    Ok(out)
}

/// `μ((I_H + (x_i))/(x_i))`, which equals `μ(I_H)` for every `i`.
pub fn mu_modulo(h: &NumericalSemigroup, i: usize) -> Result<usize> {
    Ok(artinian_mu_by_degree(h, i)?.values().sum())
}

/// Components of the factorization graph of `d`: vertices are the
/// factorizations, edges join factorizations with overlapping support.
/// Components are listed by their lexicographically least member, and each
/// component is lex-sorted.
pub fn factorization_graph(h: &NumericalSemigroup, d: i64) -> Result<Vec<Vec<ExponentVector>>> {
    let facts = factorizations(h, d)?;
    let views: Vec<&[u32]> = facts.iter().map(|a| a.coords()).collect();
    let (label, comps) = support_components(&views);
    let mut groups = vec![Vec::new(); comps];
    for (a, c) in facts.into_iter().zip(label) {
        groups[c].push(a);
    }
    Ok(groups)
}

/// A minimal `H`-homogeneous binomial generating system of `I_H`.
///
/// Betti degrees and their multiplicities come from the Artinian reduction
/// modulo `x_1`; each Betti degree is then lifted by joining the
/// lexicographically least member of every factorization-graph component to
/// that of the first component. The two counts are required to agree.
pub fn minimal_generators(h: &NumericalSemigroup) -> Result<BinomialIdealPresentation> {
    let artinian = artinian_mu_by_degree(h, 0)?;
    let mut generators = Vec::new();
    let mut betti_degrees = Vec::new();
    for d in candidate_degrees(h, 0)? {
        let groups = factorization_graph(h, d)?;
        let lifted = groups.len().saturating_sub(1);
        let expected = artinian.get(&d).copied().unwrap_or(0);
        if lifted != expected {
            return Err(Error::violation(
                "graded minimal generators",
                format!(
                    "{h}: degree {d} has {} factorization components but Artinian mu_d = {expected}",
                    groups.len()
                ),
            ));
        }
        for g in groups.iter().skip(1) {
            generators.push(Binomial {
                degree: d,
                lhs: g[0].clone(),
                rhs: groups[0][0].clone(),
            });
            betti_degrees.push(d);
        }
    }
    if generators.len() != artinian.values().sum::<usize>() {
        return Err(Error::violation(
            "graded minimal generators",
            format!("{h}: Artinian degrees outside the candidate set"),
        ));
    }
    generators.sort();
    Ok(BinomialIdealPresentation {
        mu: generators.len(),
        generators,
        betti_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    /// Bounded-recursion brute force: every coordinate up to `n / w_i`.
    fn brute_force(weights: &[i64], n: i64) -> Vec<ExponentVector> {
        fn go(w: &[i64], k: usize, rem: i64, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if k == w.len() {
                if rem == 0 {
                    out.push(ExponentVector::new(cur.clone()));
                }
                return;
            }
            for a in 0..=(rem.max(0) / w[k]) {
                cur.push(a as u32);
                go(w, k + 1, rem - a * w[k], cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(weights, 0, n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    #[test]
    fn worked_factorizations() {
        let s = h(&[5, 6, 9]);
        let f = factorizations(&s, 44).unwrap();
        let expected: Vec<_> = [[1, 2, 3], [1, 5, 1], [4, 1, 2], [4, 4, 0], [7, 0, 1]]
            .iter()
            .map(|v| ev(v))
            .collect();
        assert_eq!(f, expected);
        assert_eq!(denumerant(&s, 44), BigUint::from(5u32));

        assert_eq!(factorizations(&s, 0).unwrap(), vec![ev(&[0, 0, 0])]);
        assert!(has_unique_factorization(&s, 0).unwrap());
        assert!(factorizations(&h(&[3, 4, 5]), 1).unwrap().is_empty());

        // Input order (41, 99, 70, 53) is canonical order (41, 53, 70, 99) permuted.
        let s = h(&[41, 99, 70, 53]);
        let perm = s.labeling(&[41, 99, 70, 53]).unwrap();
        let f: Vec<_> = factorizations(&s, 1019 + 41)
            .unwrap()
            .iter()
            .map(|a| a.permuted(&perm))
            .collect();
        assert_eq!(f.len(), 2);
        assert!(f.contains(&ev(&[0, 10, 1, 0])));
        assert!(f.contains(&ev(&[0, 0, 0, 20])));
    }

    #[test]
    fn plane_cusp() {
        let p = minimal_generators(&h(&[2, 3])).unwrap();
        assert_eq!(p.mu, 1);
        assert_eq!(p.betti_degrees, vec![6]);
        assert_eq!(p.generators[0].lhs, ev(&[3, 0]));
        assert_eq!(p.generators[0].rhs, ev(&[0, 2]));
        assert_eq!(
            minimal_generators(&h(&[1])),
            Err(Error::NotApplicable("I_H = 0 when e = 1"))
        );
    }

    #[test]
    fn four_generated_examples() {
        // Complete intersection: Betti degrees by scanning every degree with
        // brute-force factorizations and counting graph components.
        let ci = h(&[10, 14, 15, 21]);
        let mut oracle = Vec::new();
        for d in 0..=(ci.frobenius() + 10 + 21) {
            let facts = brute_force(ci.generators(), d);
            let views: Vec<&[u32]> = facts.iter().map(|a| a.coords()).collect();
            let (_, comps) = support_components(&views);
            for _ in 1..comps {
                oracle.push(d);
            }
        }
        assert_eq!(oracle, vec![30, 35, 42]);
        let p = minimal_generators(&ci).unwrap();
        assert_eq!(p.mu, 3);
        assert_eq!(p.betti_degrees, oracle);

        // Pfaffian generators in (43, 20, 27, 37) order, up to sign. The first
        // is x_1^4 - x_3^5 x_4, as forced by alpha_13 = 5 and alpha_14 = 1.
        let s = h(&[43, 20, 27, 37]);
        let perm = s.labeling(&[43, 20, 27, 37]).unwrap();
        let p = minimal_generators(&s).unwrap();
        assert_eq!(p.mu, 5);
        let got: Vec<(ExponentVector, ExponentVector)> = p
            .generators
            .iter()
            .map(|b| {
                let (l, r) = (b.lhs.permuted(&perm), b.rhs.permuted(&perm));
                if l < r {
                    (l, r)
                } else {
                    (r, l)
                }
            })
            .collect();
        let expected = [
            ([4, 0, 0, 0], [0, 0, 5, 1]),
            ([0, 4, 0, 0], [1, 0, 0, 1]),
            ([0, 0, 7, 0], [3, 3, 0, 0]),
            ([0, 0, 0, 2], [0, 1, 2, 0]),
            ([1, 0, 2, 0], [0, 3, 0, 1]),
        ];
        for (a, b) in expected {
            let (a, b) = (ev(&a), ev(&b));
            let pair = if a < b { (a, b) } else { (b, a) };
            assert!(got.contains(&pair), "missing {pair:?} in {got:?}");
        }
    }

    /// Exact rank of the span used for `(mĪ)_d`, by rational elimination.
    #[test]
    fn union_find_rank_matches_rational_elimination() {
        use crate::linalg::SparseEchelon;
        use num_rational::BigRational;
        let s = h(&[5, 7, 9, 11]);
        let e = s.embedding_dim();
        for i in 0..e {
            let ni = s.generator(i);
            let others: Vec<usize> = (0..e).filter(|&j| j != i).collect();
            let avoid = |d: i64| -> Vec<ExponentVector> {
                factorizations(&s, d)
                    .unwrap()
                    .into_iter()
                    .filter(|a| a.get(i) == 0)
                    .collect()
            };
            let mut total = 0;
            for d in 0..=(s.frobenius() + ni + s.generators()[e - 1] + 5) {
                let facts = avoid(d);
                if facts.is_empty() {
                    continue;
                }
                let index = |a: &ExponentVector| facts.iter().position(|b| b == a).unwrap();
                // Spanning set of Ī_d.
                let mut idl = SparseEchelon::new();
                let in_ap = !s.contains(d - ni);
                for a in &facts {
                    let mut v = BTreeMap::new();
                    v.insert(index(a), BigRational::one());
                    if in_ap {
                        v.insert(index(&facts[0]), -BigRational::one());
                        if a == &facts[0] {
                            continue;
                        }
                    }
                    idl.insert(v);
                }
                // Spanning set of (mĪ)_d.
                let mut mi = SparseEchelon::new();
                for &j in &others {
                    let dj = d - s.generator(j);
                    let lower = avoid(dj);
                    if lower.is_empty() {
                        continue;
                    }
                    let lift = |b: &ExponentVector| b.add(&ExponentVector::unit(e, j));
                    let lower_in_ap = !s.contains(dj - ni);
                    for b in &lower {
                        let mut v = BTreeMap::new();
                        v.insert(index(&lift(b)), BigRational::one());
                        if lower_in_ap {
                            if b == &lower[0] {
                                continue;
                            }
                            v.insert(index(&lift(&lower[0])), -BigRational::one());
                        }
                        mi.insert(v);
                    }
                }
                total += idl.rank() - mi.rank();
            }
            assert_eq!(total, mu_modulo(&s, i).unwrap());
        }
    }

    proptest! {
        #[test]
        fn enumeration_matches_brute_force(
            weights in prop::collection::vec(1i64..=25, 1..5),
            n in 0i64..120,
        ) {
            let engine = FactorizationEngine::new(&weights).unwrap();
            let got = engine.factorizations(n).unwrap();
            prop_assert_eq!(&got, &brute_force(&weights, n));
            for a in &got {
                prop_assert_eq!(a.degree(&weights), n);
            }
        }

        #[test]
        fn mu_independent_of_variable(
            gens in prop::collection::vec(2i64..=30, 2..6)
                .prop_filter("gcd 1", |v| v.iter().fold(0i64, |a, &b| a.gcd(&b)) == 1)
        ) {
            let s = NumericalSemigroup::new(&gens).unwrap();
            prop_assume!(s.embedding_dim() >= 2);
            let p = minimal_generators(&s).unwrap();
            for i in 0..s.embedding_dim() {
                prop_assert_eq!(mu_modulo(&s, i).unwrap(), p.mu);
            }
            let count = denumerant(&s, p.betti_degrees[0]);
            prop_assert!(count >= BigUint::from(2u32));
            for b in &p.generators {
                prop_assert_eq!(s.degree(&b.lhs).unwrap(), b.degree);
                prop_assert_eq!(s.degree(&b.rhs).unwrap(), b.degree);
                prop_assert!(!b.lhs.divides(&b.rhs) && !b.rhs.divides(&b.lhs));
                prop_assert!(factorization_graph(&s, b.degree).unwrap().len() > 1);
            }
        }
    }
}
