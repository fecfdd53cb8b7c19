//! The inverse polynomials `J_{H,h}` and their annihilators.
//!
//! Two independent routes to a colength are provided: counting the degree
//! set `{h' ∈ H : h' ≤_H m}` and exact rational linear algebra on the cyclic
//! module `S∘J`. They are expected to agree whenever `J = J_{H,m}`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::bits::{self, MembershipBits};
use crate::dsu::support_components;
use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::factorization::{factorizations, minimal_generators, Binomial};
use crate::linalg::{SparseEchelon, SparseVec};
use crate::polynomial::{InversePolynomial, Polynomial};
use crate::quotient;
use crate::semigroup::NumericalSemigroup;

/// `J_{H,h} = Σ_{deg_H a = h} X^a`; the zero polynomial when `h ∉ H`.
pub fn inverse_polynomial(h: &NumericalSemigroup, n: i64) -> Result<InversePolynomial> {
    let e = h.embedding_dim();
    if !h.contains(n) {
        return Ok(InversePolynomial::zero(e));
    }
    Ok(InversePolynomial::sum_of(e, factorizations(h, n)?)?.with_degree(Some(n)))
}

/// Generators and numerical data of `Ann_S(J)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorPresentation {
    /// Minimal monomials of the annihilator's monomial part (an antichain).
    pub monomial_gens: Vec<ExponentVector>,
    /// Binomials `x^lhs − x^rhs`.
    pub binomial_gens: Vec<Binomial>,
    pub colength: usize,
    /// `Deg(S/Ann)`; empty when no grading is known.
    pub deg_set: Vec<i64>,
    /// `μ(Ann)` when it has been determined exactly.
    pub mu: Option<usize>,
}

/// `{h' ∈ H : m − h' ∈ H}`, ascending.
pub fn degree_set(h: &NumericalSemigroup, m: i64) -> Vec<i64> {
    (0..=m.max(-1))
        .filter(|&x| h.contains(x) && h.contains(m - x))
        .collect()
}

/// `|Deg(S/Ann J_{H,m})|` for many `m` without listing the degree sets.
///
/// For `m ∈ H`, inclusion-exclusion over `y ∈ [0, m]` gives
/// `(m + 1) − 2·#{gaps ≤ m} + #{y : y and m − y both gaps}`; the last term
/// is a shifted AND of the gap bitmap with its reversal.
#[derive(Debug, Clone)]
pub struct DegreeCounter {
    frobenius: i64,
    gaps: Vec<u64>,
    /// Bit `k` is set when `Fr − k` is a gap.
    reversed: Vec<u64>,
    /// `gaps_upto[y]` = number of gaps `≤ y`, for `0 ≤ y ≤ Fr`.
    gaps_upto: Vec<u32>,
    genus: u32,
}

fn bit(words: &[u64], i: i64) -> bool {
    i >= 0 && (i as usize) < words.len() * 64 && words[i as usize / 64] >> (i % 64) & 1 == 1
}

/// `words >> shift` read as a bit string, one output word at `w`.
fn shifted_word(words: &[u64], w: usize, shift: usize) -> u64 {
    let (q, r) = (shift / 64, shift % 64);
    let lo = words.get(w + q).copied().unwrap_or(0);
    if r == 0 {
        return lo;
    }
    let hi = words.get(w + q + 1).copied().unwrap_or(0);
    (lo >> r) | (hi << (64 - r))
}

impl DegreeCounter {
    pub fn new(h: &NumericalSemigroup) -> Self {
        let fr = h.frobenius();
        let len = (fr.max(0) as usize) / 64 + 1;
        let mut gaps = vec![0u64; len];
        let mut reversed = vec![0u64; len];
        let mut gaps_upto = Vec::with_capacity(fr.max(0) as usize + 1);
        let mut count = 0u32;
        for y in 0..=fr.max(0) {
            if !h.contains(y) {
                count += 1;
                gaps[y as usize / 64] |= 1 << (y % 64);
                let k = fr - y;
                reversed[k as usize / 64] |= 1 << (k % 64);
            }
            gaps_upto.push(count);
        }
        DegreeCounter {
            frobenius: fr,
            gaps,
            reversed,
            gaps_upto,
            genus: count,
        }
    }

    fn is_gap(&self, y: i64) -> bool {
        bit(&self.gaps, y)
    }

    /// `|{y ∈ H : m − y ∈ H}|`, which is 0 when `m ∉ H`.
    pub fn colength(&self, m: i64) -> usize {
        if m < 0 || self.is_gap(m) {
            return 0;
        }
        let below = if m >= self.frobenius {
            self.genus
        } else {
            self.gaps_upto[m as usize]
        };
        // y and m − y both gaps: y gap and bit (Fr − m + y) of `reversed`.
        let both: u32 = if m > 2 * self.frobenius {
            0
        } else if m >= self.frobenius {
            let shift = (m - self.frobenius) as usize;
            // bit y of gaps & bit (y − shift) of reversed.
            (0..self.gaps.len())
                .map(|w| (shifted_word(&self.gaps, w, shift) & self.reversed[w]).count_ones())
                .sum()
        } else {
            let shift = (self.frobenius - m) as usize;
            (0..self.gaps.len())
                .map(|w| (self.gaps[w] & shifted_word(&self.reversed, w, shift)).count_ones())
                .sum()
        };
        (m + 1) as usize + both as usize - 2 * below as usize
    }
}

/// `Ann_S(J_{H,m}) = I_H + (x^a : deg_H a ≰_H m)`.
///
/// Works degree by degree over the factorization graph: in a degree inside
/// the degree set every component beyond the first contributes a binomial;
/// outside it every component none of whose vertices is a multiple of an
/// annihilating monomial of lower degree contributes one monomial generator.
pub fn annihilator_of_semigroup_j(
    h: &NumericalSemigroup,
    m: i64,
) -> Result<AnnihilatorPresentation> {
    if !h.contains(m) {
        return Err(Error::NotInSemigroup(m));
    }
    let deg_set = degree_set(h, m);
    let in_deg = |d: i64| h.contains(d) && h.contains(m - d);
    let mut candidates: BTreeSet<i64> = BTreeSet::new();
    for &w in &deg_set {
        candidates.insert(w);
        for &n in h.generators() {
            candidates.insert(w + n);
        }
    }
    let mut monomial_gens = Vec::new();
    let mut binomial_gens = Vec::new();
    let mut mu = 0;
    for d in candidates {
        if d == 0 {
            continue;
        }
        let facts = factorizations(h, d)?;
        let views: Vec<&[u32]> = facts.iter().map(|a| a.coords()).collect();
        let (label, comps) = support_components(&views);
        if in_deg(d) {
            let mut reps: Vec<Option<&ExponentVector>> = vec![None; comps];
            for (a, &c) in facts.iter().zip(&label) {
                reps[c].get_or_insert(a);
            }
            for r in reps.iter().skip(1) {
                binomial_gens.push(Binomial {
                    degree: d,
                    lhs: (*r).expect("every component has a member").clone(),
                    rhs: reps[0].expect("nonempty").clone(),
                });
            }
            mu += comps - 1;
        } else {
            let mut killed = vec![false; comps];
            for (a, &c) in facts.iter().zip(&label) {
                if a.support().any(|j| !in_deg(d - h.generator(j))) {
                    killed[c] = true;
                }
            }
            for (a, &c) in facts.iter().zip(&label) {
                if !killed[c] {
                    monomial_gens.push(a.clone());
                }
            }
            mu += killed.iter().filter(|&&k| !k).count();
        }
    }
    monomial_gens.sort();
    binomial_gens.sort();
    Ok(AnnihilatorPresentation {
        monomial_gens,
        binomial_gens,
        colength: deg_set.len(),
        deg_set,
        mu: Some(mu),
    })
}

/// `dim_k S∘J`, the colength of `Ann_S(J)`, by exact elimination.
///
/// The cyclic module is the smallest subspace containing `J` and closed
/// under every `x_i`; it is grown breadth-first from `J`. When `weights`
/// make `J` homogeneous, each contraction is homogeneous too and the
/// elimination splits by degree.
pub fn contraction_span_dimension(j: &InversePolynomial, weights: Option<&[i64]>) -> Result<usize> {
    contraction_span_dimension_of(std::slice::from_ref(j), weights)
}

/// `dim_k Σ S∘J_k` for several inverse polynomials.
pub fn contraction_span_dimension_of(
    js: &[InversePolynomial],
    weights: Option<&[i64]>,
) -> Result<usize> {
    let Some(first) = js.first() else {
        return Ok(0);
    };
    let e = first.dim();
    if let Some(w) = weights {
        if w.len() != e {
            return Err(Error::DimensionMismatch {
                expected: e,
                found: w.len(),
            });
        }
    }
    let graded = weights.filter(|w| {
        js.iter()
            .all(|j| j.is_zero() || j.degree_under(w).is_some())
    });
    let mut columns: HashMap<ExponentVector, usize> = HashMap::new();
    let mut pieces: HashMap<i64, SparseEchelon> = HashMap::new();
    let mut queue: VecDeque<InversePolynomial> = VecDeque::new();
    let mut rank = 0;

    let mut admit = |p: InversePolynomial,
                     columns: &mut HashMap<ExponentVector, usize>,
                     queue: &mut VecDeque<InversePolynomial>|
     -> bool {
        if p.is_zero() {
            return false;
        }
        let key = match graded {
            Some(w) => p.degree_under(w).expect("contractions stay homogeneous"),
            None => 0,
        };
        let mut v = SparseVec::new();
        for (a, c) in p.terms() {
            let next = columns.len();
            let col = *columns.entry(a.clone()).or_insert(next);
            v.insert(col, BigRational::from_integer(c.clone()));
        }
        if pieces.entry(key).or_default().insert(v) {
            queue.push_back(p);
            true
        } else {
            false
        }
    };
    for j in js {
        if j.dim() != e {
            return Err(Error::DimensionMismatch {
                expected: e,
                found: j.dim(),
            });
        }
        if admit(j.clone(), &mut columns, &mut queue) {
            rank += 1;
        }
    }
    while let Some(p) = queue.pop_front() {
        for i in 0..e {
            let q = p.contract(&ExponentVector::unit(e, i));
            if admit(q, &mut columns, &mut queue) {
                rank += 1;
            }
        }
    }
    Ok(rank)
}

/// Minimal monomials `x^c` with `x^c · J = 0` for a `J` with nonnegative
/// terms only: those `c` below no exponent of `J`.
fn staircase_complement(j: &InversePolynomial) -> Vec<ExponentVector> {
    let e = j.dim();
    // Candidates: x_i^{b_i + 1} · (lower corner), formed from each term's
    // coordinates; minimal elements of the complement of a union of boxes
    // have every coordinate equal to 0 or to some b_i + 1.
    let mut coordinate_values: Vec<BTreeSet<u32>> = vec![BTreeSet::from([0]); e];
    for b in j.exponents() {
        for (i, &x) in b.coords().iter().enumerate() {
            coordinate_values[i].insert(x + 1);
        }
    }
    let below_some = |c: &[u32]| {
        j.exponents()
            .any(|b| c.iter().zip(b.coords()).all(|(x, y)| x <= y))
    };
    let mut out: Vec<ExponentVector> = Vec::new();
    let values: Vec<Vec<u32>> = coordinate_values
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect();
    let mut idx = vec![0usize; e];
    loop {
        let c: Vec<u32> = idx.iter().enumerate().map(|(i, &k)| values[i][k]).collect();
        if !below_some(&c) {
            // Minimal iff lowering any positive coordinate lands below a term.
            let minimal = (0..e).filter(|&i| c[i] > 0).all(|i| {
                let mut d = c.clone();
                d[i] -= 1;
                below_some(&d)
            });
            if minimal {
                out.push(ExponentVector::new(c));
            }
        }
        let mut k = e;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < values[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// The two-term closed form `(x_i^{p_i}) + (x_i^{q_i} x_j^{q_j})_{a_i<b_i, a_j>b_j}
/// + (x^a − x^b)` for `J = X^a + X^b`.
///
/// Valid when `a` and `b` have disjoint supports. If they share a variable
/// `x_k`, then `x^{a−e_k}` and `x^{b−e_k}` can contract `J` to the same
/// inverse monomial, so their difference is an annihilator of degree lower
/// than anything in the closed form (e.g. `x_2 − x_3` for `X_1X_2 + X_1X_3`).
pub fn binomial_closed_form(
    a: &ExponentVector,
    b: &ExponentVector,
) -> Result<AnnihilatorPresentation> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if a.shares_support(b) || a.is_zero() || b.is_zero() {
        return Err(Error::NotApplicable(
            "closed form needs nonzero exponents with disjoint supports",
        ));
    }
    let e = a.dim();
    let mut monos = Vec::new();
    for i in 0..e {
        let mut v = vec![0u32; e];
        v[i] = a.get(i).max(b.get(i)) + 1;
        monos.push(ExponentVector::new(v));
    }
    for i in 0..e {
        for j in 0..e {
            if a.get(i) < b.get(i) && a.get(j) > b.get(j) {
                let mut v = vec![0u32; e];
                v[i] = a.get(i).min(b.get(i)) + 1;
                v[j] = a.get(j).min(b.get(j)) + 1;
                monos.push(ExponentVector::new(v));
            }
        }
    }
    monos.sort();
    let (lhs, rhs) = if a > b { (a, b) } else { (b, a) };
    let binos = vec![(lhs.clone(), rhs.clone())];
    let colength = quotient::colength(e, &monos, &binos)?;
    let mu = quotient::minimal_generator_count(e, &monos, &binos)?;
    Ok(AnnihilatorPresentation {
        monomial_gens: monos,
        binomial_gens: vec![Binomial {
            degree: 0,
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        }],
        colength,
        deg_set: Vec::new(),
        mu: Some(mu),
    })
}

/// Upper bound on `μ(Ann(X^a + X^b))` for `e` variables: `e` pure powers,
/// at most `⌊e/2⌋⌈e/2⌉` mixed monomials and one binomial. For even `e = 2e'`
/// this is `e + e'^2 + 1`; for odd `e = 2e' + 1` it is `e + e'(e'+1) + 1`,
/// which is attained by `X_1X_2 + X_3X_4X_5`.
pub fn binomial_mu_bound(e: usize) -> usize {
    e + (e / 2) * e.div_ceil(2) + 1
}

/// Result of [`annihilator_general`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralAnnihilator {
    pub colength: usize,
    /// Minimal monomials annihilating `J` (terms with nonnegative coefficients only).
    pub monomial_gens: Vec<ExponentVector>,
    /// The two-term closed form, when `J = X^a + X^b` with disjoint supports.
    pub closed_form: Option<AnnihilatorPresentation>,
}

/// Colength of `Ann_S(J)` by linear algebra, plus the closed form when `J`
/// is a sum of two inverse monomials with disjoint supports. The closed form
/// is certified: its generators annihilate `J` and it has the same colength.
pub fn annihilator_general(j: &InversePolynomial) -> Result<GeneralAnnihilator> {
    annihilator_general_graded(j, None)
}

/// As [`annihilator_general`], with an optional grading for the elimination.
pub fn annihilator_general_graded(
    j: &InversePolynomial,
    weights: Option<&[i64]>,
) -> Result<GeneralAnnihilator> {
    if j.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let colength = contraction_span_dimension(j, weights)?;
    let monomial_gens = if j.terms().values().all(|c| c.is_positive()) {
        staircase_complement(j)
    } else {
        Vec::new()
    };
    let mut closed_form = None;
    let exps: Vec<&ExponentVector> = j.exponents().collect();
    if let [a, b] = exps[..] {
        let unit = j.terms().values().all(|c| c.is_one());
        if unit && !a.shares_support(b) && !a.is_zero() && !b.is_zero() {
            let cf = binomial_closed_form(a, b)?;
            certify_closed_form(j, &cf, colength)?;
            closed_form = Some(cf);
        }
    }
    Ok(GeneralAnnihilator {
        colength,
        monomial_gens,
        closed_form,
    })
}

fn certify_closed_form(
    j: &InversePolynomial,
    cf: &AnnihilatorPresentation,
    colength: usize,
) -> Result<()> {
    for m in &cf.monomial_gens {
        if !j.contract(m).is_zero() {
            return Err(Error::violation(
                "two-term annihilator",
                format!("x^{m} does not annihilate {j}"),
            ));
        }
    }
    for b in &cf.binomial_gens {
        if !Polynomial::binomial(&b.lhs, &b.rhs)?.apply(j)?.is_zero() {
            return Err(Error::violation(
                "two-term annihilator",
                format!("x^{} - x^{} does not annihilate {j}", b.lhs, b.rhs),
            ));
        }
    }
    if cf.colength != colength {
        return Err(Error::violation(
            "two-term annihilator",
            format!(
                "closed form has colength {} but S∘J has dimension {colength} for {j}",
                cf.colength
            ),
        ));
    }
    let bound = binomial_mu_bound(j.dim());
    if cf.mu.is_some_and(|mu| mu > bound) {
        return Err(Error::violation(
            "two-term annihilator",
            format!("mu = {:?} exceeds the bound {bound} for {j}", cf.mu),
        ));
    }
    Ok(())
}

/// Data of the almost-symmetry inequality at one `h ∈ H_+`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsCheck {
    pub h: i64,
    pub colength: usize,
    pub bound: i64,
    pub equality: bool,
}

/// `dim S/Ann(J_{H,Fr+h}) ≤ h − (type − 1)`, with the equality flag.
pub fn check_as(h: &NumericalSemigroup, x: i64) -> Result<AsCheck> {
    if x <= 0 || !h.contains(x) {
        return Err(Error::NotInSemigroup(x));
    }
    check_as_with(h, &DegreeCounter::new(h), x)
}

/// [`check_as`] with a prebuilt counter, for many `x` on one semigroup.
pub fn check_as_with(h: &NumericalSemigroup, counter: &DegreeCounter, x: i64) -> Result<AsCheck> {
    if x <= 0 || !h.contains(x) {
        return Err(Error::NotInSemigroup(x));
    }
    let colength = counter.colength(h.frobenius() + x);
    let bound = x - (h.type_() as i64 - 1);
    if colength as i64 > bound {
        return Err(Error::violation(
            "almost-symmetric inequality",
            format!("{h}: colength {colength} exceeds h - (t-1) = {bound} at h = {x}"),
        ));
    }
    Ok(AsCheck {
        h: x,
        colength,
        bound,
        equality: colength as i64 == bound,
    })
}

/// The equality test of [`check_as`] over `h` in the generators and
/// `Ap(H, n_1)`, next to the genus test `2g = Fr + type`.
///
/// `witness` is the first `h` with equality and `equality_everywhere` says
/// whether equality holds at every searched `h`. Almost symmetry matches the
/// second; a single witness does not suffice (for `⟨3,7,8⟩` equality holds
/// at `h = 3` while `2g = 8 > Fr + type = 7`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostSymmetryReport {
    pub witness: Option<i64>,
    pub equality_everywhere: bool,
    pub searched: Vec<i64>,
    pub by_genus: bool,
}

impl AlmostSymmetryReport {
    /// "Equality for some `h`" agrees with the genus test.
    pub fn some_h_agrees(&self) -> bool {
        self.witness.is_some() == self.by_genus
    }

    /// "Equality for every searched `h`" agrees with the genus test.
    pub fn every_h_agrees(&self) -> bool {
        self.equality_everywhere == self.by_genus
    }
}

pub fn almost_symmetry(h: &NumericalSemigroup) -> Result<AlmostSymmetryReport> {
    let mut search: BTreeSet<i64> = h.generators().iter().copied().collect();
    search.extend(h.apery_table().iter().copied().filter(|&w| w > 0));
    let counter = DegreeCounter::new(h);
    let mut witness = None;
    let mut everywhere = true;
    for &x in &search {
        if check_as_with(h, &counter, x)?.equality {
            witness.get_or_insert(x);
        } else {
            everywhere = false;
        }
    }
    Ok(AlmostSymmetryReport {
        witness,
        equality_everywhere: everywhere,
        searched: search.into_iter().collect(),
        by_genus: h.is_almost_symmetric(),
    })
}

/// Certificate for `I_H + (x^a) = ∩_{f ∈ PF} Ann(J_{H, f+h})`, `h = deg_H a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionCertificate {
    pub a: ExponentVector,
    pub h: i64,
    /// `dim S/(I_H + (x^a)) = |Ap(H, h)|`.
    pub lhs_colength: usize,
    /// `|∪_f Deg(S/Ann J_{H,f+h})|`.
    pub rhs_colength_by_degrees: usize,
    /// `dim Σ_f S∘J_{H,f+h}` by elimination, when requested.
    pub rhs_colength_by_elimination: Option<usize>,
    /// Number of annihilation checks performed, at the degree level in
    /// [`IntersectionMode::Degrees`].
    pub annihilation_checks: usize,
}

/// How much of the intersection certificate to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntersectionMode {
    /// Degree sets only: `x^a` kills each `J_{H,f+h}` because `f ∉ H`, and
    /// the union of the degree sets is `Ap(H, h)`.
    Degrees,
    /// Also applies `x^a` and every minimal generator of `I_H` to each
    /// `J_{H,f+h}`.
    Polynomials,
    /// Also computes the right-hand colength by elimination.
    Elimination,
}

/// Reuses the minimal generators of `I_H` across many certificates.
pub struct IntersectionVerifier<'a> {
    h: &'a NumericalSemigroup,
    generators: OnceLock<Vec<(Binomial, Polynomial)>>,
    /// Membership of `[0, Fr + n_e]`, enough for `x^a = x_i`.
    bits: OnceLock<MembershipBits>,
}

impl<'a> IntersectionVerifier<'a> {
    pub fn new(h: &'a NumericalSemigroup) -> Result<Self> {
        Ok(IntersectionVerifier {
            h,
            generators: OnceLock::new(),
            bits: OnceLock::new(),
        })
    }

    fn generators(&self) -> Result<&[(Binomial, Polynomial)]> {
        if let Some(g) = self.generators.get() {
            return Ok(g);
        }
        let gens = if self.h.embedding_dim() >= 2 {
            minimal_generators(self.h)?
                .generators
                .into_iter()
                .map(|b| {
                    let p = Polynomial::binomial(&b.lhs, &b.rhs)?;
                    Ok((b, p))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        Ok(self.generators.get_or_init(|| gens))
    }

    pub fn verify(
        &self,
        a: &ExponentVector,
        mode: IntersectionMode,
    ) -> Result<IntersectionCertificate> {
        let h = self.h;
        let deg = h.degree(a)?;
        if deg == 0 {
            return Err(Error::DegreeZero);
        }
        let fail = |detail: String| {
            Err(Error::violation(
                "I_H + (x^a) = intersection",
                format!("{h}: {detail}"),
            ))
        };
        let top = (h.frobenius() + deg).max(0) as usize;
        let largest = *h.generators().last().expect("nonempty");
        let cached = self
            .bits
            .get_or_init(|| MembershipBits::new(h, (h.frobenius() + largest).max(0) as usize + 1));
        let local;
        let bits = if top < cached.len() {
            cached
        } else {
            local = MembershipBits::new(h, top + 1);
            &local
        };
        let mut union = vec![0u64; bits.apery(0).len()];
        let mut js = Vec::new();
        let mut checks = 0;
        for &f in h.pseudo_frobenius() {
            let m = f + deg;
            if h.contains(f) {
                return fail(format!("x^{a} does not annihilate J_{m}"));
            }
            checks += 1;
            if mode != IntersectionMode::Degrees {
                let j = inverse_polynomial(h, m)?;
                if !Polynomial::monomial(a.clone()).apply(&j)?.is_zero() {
                    return fail(format!("x^{a} does not annihilate J_{m}"));
                }
                for (b, g) in self.generators()? {
                    if !g.apply(&j)?.is_zero() {
                        return fail(format!(
                            "x^{} - x^{} does not annihilate J_{m}",
                            b.lhs, b.rhs
                        ));
                    }
                    checks += 1;
                }
                js.push(j);
            }
            if m >= 0 {
                for (u, d) in union.iter_mut().zip(bits.degree_set(m as usize)) {
                    *u |= d;
                }
            }
        }
        let ap = bits.apery(deg as usize);
        let lhs_colength = bits::count(&ap);
        let union_len = bits::count(&union);
        if union != ap {
            return fail(format!(
                "union of degree sets has {union_len} elements, Ap(H, {deg}) has {lhs_colength}"
            ));
        }
        if mode != IntersectionMode::Degrees && h.apery(deg)?.elements != bits::ones(&ap) {
            return fail(format!("Apery set of {deg} disagrees with the bitmap"));
        }
        let by_elim = if mode == IntersectionMode::Elimination {
            let dim = contraction_span_dimension_of(&js, Some(h.generators()))?;
            if dim != lhs_colength {
                return fail(format!("elimination gives {dim}, expected {lhs_colength}"));
            }
            Some(dim)
        } else {
            None
        };
        Ok(IntersectionCertificate {
            a: a.clone(),
            h: deg,
            lhs_colength,
            rhs_colength_by_degrees: union_len,
            rhs_colength_by_elimination: by_elim,
            annihilation_checks: checks,
        })
    }
}

/// One-shot form of [`IntersectionVerifier::verify`], with elimination.
pub fn verify_intersection_theorem(
    h: &NumericalSemigroup,
    a: &ExponentVector,
) -> Result<IntersectionCertificate> {
    IntersectionVerifier::new(h)?.verify(a, IntersectionMode::Elimination)
}

/// Data of the two-term `J_{H,Fr+n_i}` statement for one index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoTermCertificate {
    pub index: usize,
    pub a: ExponentVector,
    pub b: ExponentVector,
    /// Indices with `a_k = b_k`, counted including `i` itself.
    pub s: usize,
    /// Size of the smaller of the two strict groups `a_k > b_k`, `a_k < b_k`.
    pub singleton_side: usize,
    /// `μ(Ann(J)/(x_i)) = μ(Ann J) − 1`.
    pub mu_mod_xi: usize,
    /// The value the refined count predicts, when one applies.
    pub predicted: Option<usize>,
    pub bound_numerator: usize,
}

/// Checks the refined generator counts for a two-term `J = J_{H,Fr+n_i}`.
///
/// With `s` coordinates where the two exponents agree and the others split
/// into a group where `a > b` and a group where `a < b` (orientation chosen
/// so the first group is the smaller): if that group is a single index and
/// `s + 1 < e − 1` then `μ = 2e − s − 2`; if `s = e − 2` then `μ = e − 1`;
/// always `μ ≤ e + (e − s)^2/4`.
pub fn two_term_check(h: &NumericalSemigroup, i: usize) -> Result<Option<TwoTermCertificate>> {
    let e = h.embedding_dim();
    let m = h.frobenius() + h.generator(i);
    let j = inverse_polynomial(h, m)?;
    if j.len() != 2 {
        return Ok(None);
    }
    let exps: Vec<&ExponentVector> = j.exponents().collect();
    let (a, b) = (exps[0].clone(), exps[1].clone());
    let s = (0..e).filter(|&k| a.get(k) == b.get(k)).count();
    let gt = (0..e).filter(|&k| a.get(k) > b.get(k)).count();
    let lt = e - s - gt;
    let singleton_side = gt.min(lt);
    let ann = annihilator_of_semigroup_j(h, m)?;
    let mu = ann.mu.expect("semigroup annihilators carry mu");
    let mu_mod_xi = mu
        .checked_sub(1)
        .ok_or_else(|| Error::violation("two-term J", "annihilator with no generators"))?;
    let predicted = if s == e - 2 {
        Some(e - 1)
    } else if singleton_side == 1 && s + 1 < e - 1 {
        Some(2 * e - s - 2)
    } else {
        None
    };
    // 4μ ≤ 4e + (e − s)^2 avoids the fraction.
    let bound_numerator = 4 * e + (e - s) * (e - s);
    if 4 * mu_mod_xi > bound_numerator {
        return Err(Error::violation(
            "two-term J bound",
            format!("{h}, i = {}: mu = {mu_mod_xi} exceeds e + (e-s)^2/4", i + 1),
        ));
    }
    if let Some(p) = predicted {
        if p != mu_mod_xi {
            return Err(Error::violation(
                "two-term J count",
                format!("{h}, i = {}: mu = {mu_mod_xi}, predicted {p}", i + 1),
            ));
        }
    }
    Ok(Some(TwoTermCertificate {
        index: i,
        a,
        b,
        s,
        singleton_side,
        mu_mod_xi,
        predicted,
        bound_numerator,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::minimal_generators;
    use proptest::prelude::*;

    fn h(g: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn labeled(gens: &[i64], n: i64) -> String {
        let s = h(gens);
        let perm = s.labeling(gens).unwrap();
        inverse_polynomial(&s, n)
            .unwrap()
            .permuted(&perm)
            .to_string()
    }

    #[test]
    fn worked_inverse_polynomials() {
        assert_eq!(labeled(&[3, 4, 5], 5), "X3");
        assert_eq!(labeled(&[3, 4, 5], 6), "X1^2");
        assert_eq!(labeled(&[3, 4, 5], 7), "X1*X2");
        // Only the increasing labeling of (4, 6, 5) fits both J_11 and J_12.
        assert_eq!(labeled(&[4, 5, 6], 11), "X2*X3");
        assert_eq!(labeled(&[4, 5, 6], 12), "X1^3 + X3^2");
        assert_eq!(labeled(&[4, 6, 5], 12), "X1^3 + X2^2");
        assert_eq!(labeled(&[41, 99, 70, 53], 1019 + 41), "X2^10*X3 + X4^20");
        assert_eq!(
            labeled(&[43, 20, 27, 37], 179 + 43),
            "X2^3*X3^6 + X2^2*X3^4*X4^2 + X2*X3^2*X4^4 + X4^6"
        );
        // Two generators: J_{Fr+n_1} = X_2^{n_1 - 1}.
        for (n1, n2) in [(2, 3), (5, 7), (9, 4)] {
            let fr = n1 * n2 - n1 - n2;
            assert_eq!(
                labeled(&[n1, n2], fr + n1),
                format!("X2^{}", n1 - 1).replace("X2^1", "X2")
            );
        }
        assert_eq!(
            inverse_polynomial(&h(&[3, 4, 5]), 0).unwrap(),
            InversePolynomial::one(3)
        );
        assert!(inverse_polynomial(&h(&[3, 4, 5]), 2).unwrap().is_zero());
    }

    #[test]
    fn semigroup_annihilators() {
        let s = h(&[11, 13, 17]);
        let ann = annihilator_of_semigroup_j(&s, 143).unwrap();
        assert_eq!(ann.colength, 84);

        let ann = annihilator_of_semigroup_j(&s, 0).unwrap();
        assert_eq!(ann.colength, 1);
        assert_eq!(
            ann.monomial_gens,
            vec![ev(&[0, 0, 1]), ev(&[0, 1, 0]), ev(&[1, 0, 0])]
        );
        assert_eq!(ann.mu, Some(3));

        assert_eq!(
            annihilator_of_semigroup_j(&s, 1),
            Err(Error::NotInSemigroup(1))
        );
    }

    #[test]
    fn two_term_j_of_the_four_generated_example() {
        // X_2^2 X_3^4 (X_4^2 + X_2 X_3^2) in (43, 20, 27, 37) coordinates.
        let j = InversePolynomial::sum_of(4, [ev(&[0, 2, 4, 2]), ev(&[0, 3, 6, 0])]).unwrap();
        let ann = annihilator_general(&j).unwrap();
        // The quadric f_4 = x_4^2 - x_2 x_3^2 does not annihilate this J, so
        // its annihilator does not contain I_H; the cyclic module has
        // dimension 49. (31 = dim S/(I_H + (x_1, x_4^3)).)
        let f4 = Polynomial::binomial(&ev(&[0, 0, 0, 2]), &ev(&[0, 1, 2, 0])).unwrap();
        assert!(!f4.apply(&j).unwrap().is_zero());
        assert_eq!(ann.colength, 49);
        assert!(ann.closed_form.is_none());
        let s = h(&[43, 20, 27, 37]);
        let quotient = (0..=400)
            .filter(|&y| s.contains(y) && !s.contains(y - 43) && !s.contains(y - 3 * 37))
            .count();
        assert_eq!(quotient, 31);
    }

    #[test]
    fn general_annihilators() {
        let j = InversePolynomial::one(2);
        assert_eq!(annihilator_general(&j).unwrap().colength, 1);
        let j = InversePolynomial::monomial(ev(&[2]));
        let ann = annihilator_general(&j).unwrap();
        assert_eq!(ann.colength, 3);
        assert_eq!(ann.monomial_gens, vec![ev(&[3])]);
        assert_eq!(
            annihilator_general(&InversePolynomial::zero(2)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn split_product_closed_form() {
        // J = X_1...X_s + X_{s+1}...X_e.
        for (e, s) in [(4usize, 2usize), (5, 2), (6, 3), (3, 1)] {
            let a: Vec<u32> = (0..e).map(|k| u32::from(k < s)).collect();
            let b: Vec<u32> = (0..e).map(|k| u32::from(k >= s)).collect();
            let j = InversePolynomial::sum_of(e, [ev(&a), ev(&b)]).unwrap();
            let ann = annihilator_general(&j).unwrap();
            let cf = ann.closed_form.unwrap();
            let squares = (0..e).filter(|&k| {
                let mut v = vec![0; e];
                v[k] = 2;
                cf.monomial_gens.contains(&ev(&v))
            });
            assert_eq!(squares.count(), e);
            assert_eq!(cf.monomial_gens.len(), e + s * (e - s));
            if s >= 2 && e - s >= 2 {
                assert_eq!(cf.mu.unwrap(), e + s * (e - s) + 1);
            } else {
                // x_1 - X_2...X_e makes x_1 redundant everywhere it appears.
                assert_eq!(cf.mu.unwrap(), e);
            }
            assert!(cf.mu.unwrap() <= binomial_mu_bound(e));
            // S∘J: J, the products of proper subsets on each side, and 1.
            assert_eq!(ann.colength, (1 << s) + (1 << (e - s)) - 2);
        }
    }

    #[test]
    fn odd_bound_is_attained() {
        let j: InversePolynomial = "X1*X2 + X3*X4*X5".parse().unwrap();
        let cf = annihilator_general(&j).unwrap().closed_form.unwrap();
        assert_eq!(cf.mu, Some(12));
        assert_eq!(binomial_mu_bound(5), 12);
        assert_eq!(binomial_mu_bound(4), 4 + 4 + 1);
    }

    #[test]
    fn shared_support_breaks_the_closed_form() {
        let j: InversePolynomial = "X1*X2 + X1*X3".parse().unwrap();
        let ann = annihilator_general(&j).unwrap();
        assert!(ann.closed_form.is_none());
        assert_eq!(ann.colength, 4);
        let p = Polynomial::parse_with_dim("x2 - x3", 3).unwrap();
        assert!(p.apply(&j).unwrap().is_zero());
    }

    #[test]
    fn as_inequality_examples() {
        for gens in [[4i64, 6, 5], [5, 6, 9]] {
            let s = h(&gens);
            for &g in s.generators() {
                let c = check_as(&s, g).unwrap();
                assert_eq!(c.colength as i64, g);
                assert!(c.equality);
            }
        }
        let s = h(&[11, 13, 17]);
        let c = check_as(&s, 11).unwrap();
        assert_eq!(c.bound, 10);
        let r = almost_symmetry(&s).unwrap();
        assert!(r.every_h_agrees());
        assert_eq!(c.equality, s.is_almost_symmetric());
        assert!(check_as(&s, 0).is_err());
    }

    /// Non-symmetric three-generated semigroups from the 2x3 determinantal
    /// description, with alpha' = gamma' = 1: equality at h = n_2.
    #[test]
    fn single_equality_does_not_force_almost_symmetry() {
        let s = h(&[3, 7, 8]);
        assert_eq!(s.pseudo_frobenius(), &[4, 5]);
        assert!(!s.is_almost_symmetric());
        let c = check_as(&s, 3).unwrap();
        assert_eq!((c.colength, c.bound), (2, 2));
        let r = almost_symmetry(&s).unwrap();
        assert_eq!(r.witness, Some(3));
        assert!(!r.equality_everywhere);
        assert!(!r.some_h_agrees());
    }

    #[test]
    fn determinantal_almost_symmetric_family() {
        for (al, be, ga, bep) in [
            (2u32, 1u32, 1u32, 1u32),
            (3, 2, 1, 1),
            (2, 2, 3, 1),
            (1, 3, 2, 1),
        ] {
            let (alp, gap) = (1i64, 1i64);
            let (al, be, ga, bep) = (al as i64, be as i64, ga as i64, bep as i64);
            let n1 = be * ga + bep * ga + bep * gap;
            let n2 = ga * al + gap * al + gap * alp;
            let n3 = al * be + alp * be + alp * bep;
            let Ok(s) = NumericalSemigroup::new(&[n1, n2, n3]) else {
                continue;
            };
            if s.embedding_dim() != 3 || s.is_symmetric() {
                continue;
            }
            let big_n = n1 + n2 + n3;
            let f = al * n1 + (ga + gap) * n3 - big_n;
            let fp = bep * n2 + (ga + gap) * n3 - big_n;
            let mut pf = vec![f, fp];
            pf.sort();
            assert_eq!(s.pseudo_frobenius(), pf.as_slice());
            if f > fp {
                let c = check_as(&s, n2).unwrap();
                assert_eq!(c.colength as i64, al * (ga + gap));
                assert!(c.equality);
                assert!(s.is_almost_symmetric());
            }
        }
    }

    #[test]
    fn intersection_theorem_examples() {
        let s = h(&[3, 4, 5]);
        let cert = verify_intersection_theorem(&s, &ev(&[1, 0, 0])).unwrap();
        assert_eq!(cert.lhs_colength, 3);
        assert_eq!(cert.rhs_colength_by_elimination, Some(3));
        let s = h(&[2, 3]);
        let cert = verify_intersection_theorem(&s, &ev(&[1, 0])).unwrap();
        assert_eq!(cert.lhs_colength, 2);
        assert_eq!(
            verify_intersection_theorem(&s, &ev(&[0, 0])),
            Err(Error::DegreeZero)
        );
        // Symmetric: a single annihilator.
        let s = h(&[41, 99, 70, 53]);
        for i in 0..4 {
            let cert = verify_intersection_theorem(&s, &ExponentVector::unit(4, i)).unwrap();
            assert_eq!(cert.lhs_colength as i64, s.generator(i));
        }
    }

    #[test]
    fn bresinsky_two_term_counts() {
        let s = h(&[41, 99, 70, 53]);
        let c = two_term_check(&s, 0).unwrap().unwrap();
        assert_eq!(c.mu_mod_xi, 5);
        assert_eq!(c.predicted, Some(5));
        assert_eq!(minimal_generators(&s).unwrap().mu, 5);
    }

    fn small_semigroup() -> impl Strategy<Value = NumericalSemigroup> {
        prop::collection::vec(2i64..=16, 2..5)
            .prop_filter_map("gcd 1", |v| NumericalSemigroup::new(&v).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn degree_counter_matches_degree_sets(s in small_semigroup(), ms in prop::collection::vec(-3i64..200, 8)) {
            let counter = DegreeCounter::new(&s);
            for m in ms {
                prop_assert_eq!(counter.colength(m), degree_set(&s, m).len(), "m = {}", m);
            }
        }

        #[test]
        fn intersection_modes_agree(s in small_semigroup(), i in 0usize..8) {
            let i = i % s.embedding_dim();
            let a = ExponentVector::unit(s.embedding_dim(), i);
            let v = IntersectionVerifier::new(&s).unwrap();
            let d = v.verify(&a, IntersectionMode::Degrees).unwrap();
            let p = v.verify(&a, IntersectionMode::Polynomials).unwrap();
            prop_assert_eq!(d.lhs_colength, p.lhs_colength);
            prop_assert_eq!(d.rhs_colength_by_degrees, p.rhs_colength_by_degrees);
        }

        #[test]
        fn action_matches_degree_shift(s in small_semigroup(), m_off in 0i64..40, pick in prop::collection::vec(0u32..3, 4)) {
            let e = s.embedding_dim();
            let m = s.frobenius() + 1 + m_off;
            let a = ExponentVector::new(pick.into_iter().cycle().take(e).collect());
            let hdeg = s.degree(&a).unwrap();
            let j = inverse_polynomial(&s, m).unwrap();
            let got = Polynomial::monomial(a).apply(&j).unwrap();
            if s.leq(hdeg, m) {
                prop_assert_eq!(got, inverse_polynomial(&s, m - hdeg).unwrap());
            } else {
                prop_assert!(got.is_zero());
            }
            for a in j.exponents() {
                prop_assert_eq!(s.degree(a).unwrap(), m);
            }
        }

        #[test]
        fn colength_routes_agree(s in small_semigroup(), m_off in 0i64..30) {
            let m = s.frobenius() + m_off;
            prop_assume!(s.contains(m));
            let ann = annihilator_of_semigroup_j(&s, m).unwrap();
            let j = inverse_polynomial(&s, m).unwrap();
            let lin = contraction_span_dimension(&j, None).unwrap();
            prop_assert_eq!(ann.colength, lin);
            // Parity and duality of the degree set.
            for &d in &ann.deg_set {
                prop_assert!(ann.deg_set.binary_search(&(m - d)).is_ok());
            }
            let odd_exception = m % 2 == 0 && s.contains(m / 2);
            prop_assert_eq!(ann.colength % 2 == 1, odd_exception);
            // Generators annihilate; the binomial part is I_H cut to the degree set.
            for mono in &ann.monomial_gens {
                prop_assert!(j.contract(mono).is_zero());
            }
            if s.embedding_dim() >= 2 {
                let ih = minimal_generators(&s).unwrap();
                let expected: Vec<Binomial> = ih.generators.into_iter()
                    .filter(|b| s.leq(b.degree, m))
                    .collect();
                prop_assert_eq!(&ann.binomial_gens, &expected);
                for b in &expected {
                    prop_assert!(Polynomial::binomial(&b.lhs, &b.rhs).unwrap().apply(&j).unwrap().is_zero());
                }
            }
            // The generators cut out an ideal of the same colength.
            let binos: Vec<_> = ann.binomial_gens.iter().map(|b| (b.lhs.clone(), b.rhs.clone())).collect();
            let mut monos = ann.monomial_gens.clone();
            for i in 0..s.embedding_dim() {
                // Pure powers lie in the annihilator; adding them does not change it.
                let mut k = 0u32;
                while s.leq(i64::from(k) * s.generator(i), m) { k += 1; }
                let mut v = vec![0; s.embedding_dim()];
                v[i] = k;
                monos.push(ExponentVector::new(v));
            }
            prop_assert_eq!(quotient::colength(s.embedding_dim(), &monos, &binos).unwrap(), ann.colength);
            prop_assert_eq!(
                quotient::minimal_generator_count(s.embedding_dim(), &ann.monomial_gens.iter().cloned().chain(monos).collect::<Vec<_>>(), &binos).unwrap(),
                ann.mu.unwrap()
            );
        }

        #[test]
        fn intersection_theorem_holds(s in small_semigroup(), pick in prop::collection::vec(0u32..2, 4)) {
            let e = s.embedding_dim();
            let a = ExponentVector::new(pick.into_iter().cycle().take(e).collect());
            prop_assume!(!a.is_zero());
            let cert = verify_intersection_theorem(&s, &a).unwrap();
            prop_assert_eq!(cert.lhs_colength as i64, cert.h);
        }

        #[test]
        fn almost_symmetry_tests_agree(s in small_semigroup()) {
            let r = almost_symmetry(&s).unwrap();
            prop_assert!(r.every_h_agrees(), "{:?} for {}", r, s);
            if r.by_genus {
                prop_assert!(r.some_h_agrees());
            }
        }
    }
}
