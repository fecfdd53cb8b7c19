//! Symmetric four-generated semigroups that are not complete intersections:
//! the minimal self-multiples `α_i`, the Pfaffian presentation of `I_H`, the
//! index with exactly two factorizations of `Fr(H) + n_i`, and the shape of
//! `J_{H,Fr+n_1}`.
//!
//! Structure coordinates: a [`PfaffianStructure`] relabels the generators
//! so that `n'_k = n_{perm[k]}` (canonical, increasing order on the right),
//! and its exponent vectors are written in that relabeled order.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::factorization::{
    factorizations, minimal_generators, mu_modulo, BinomialIdealPresentation,
};
use crate::inverse_poly::{
    annihilator_of_semigroup_j, inverse_polynomial, two_term_check, TwoTermCertificate,
};
use crate::polynomial::InversePolynomial;
use crate::semigroup::NumericalSemigroup;

/// `α_i` and the factorizations of `α_i n_i` that avoid `n_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaEntry {
    pub alpha: i64,
    pub product: i64,
    /// Canonical coordinates; coordinate `i` is zero in each.
    pub factorizations: Vec<ExponentVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaTable {
    /// One entry per generator in canonical order.
    pub entries: Vec<AlphaEntry>,
    /// Whether the products `α_i n_i` are pairwise distinct; only set for
    /// symmetric non-complete-intersection four-generated semigroups, where
    /// distinctness is required.
    pub products_distinct: Option<bool>,
}

impl AlphaTable {
    pub fn alphas(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.alpha).collect()
    }
}

/// The minimal `α_i > 0` with `α_i n_i ∈ ⟨n_j : j ≠ i⟩`, for every `i`.
pub fn alpha_table(h: &NumericalSemigroup) -> Result<AlphaTable> {
    let e = h.embedding_dim();
    if e < 2 {
        return Err(Error::InvalidParameter(
            "alpha needs at least two generators".into(),
        ));
    }
    let engine = h.engine()?;
    let mut entries = Vec::with_capacity(e);
    for i in 0..e {
        let ni = h.generator(i);
        // k = n_j / gcd(n_i, n_j) always works, so the loop terminates.
        let mut k = 1i64;
        let entry = loop {
            let product = k.checked_mul(ni).ok_or(Error::Overflow)?;
            let mut found = Vec::new();
            let _ = engine.for_each(product, |a| {
                if a[i] == 0 {
                    found.push(ExponentVector::new(a.to_vec()));
                }
                ControlFlow::Continue(())
            })?;
            if !found.is_empty() {
                break AlphaEntry {
                    alpha: k,
                    product,
                    factorizations: found,
                };
            }
            k += 1;
        };
        entries.push(entry);
    }
    let products_distinct = if e == 4 && h.is_symmetric() && minimal_generators(h)?.mu != 3 {
        let mut products: Vec<i64> = entries.iter().map(|x| x.product).collect();
        products.sort_unstable();
        products.dedup();
        let distinct = products.len() == 4;
        if !distinct {
            return Err(Error::violation(
                "distinct alpha_i n_i",
                format!("{h}: two products alpha_i n_i coincide"),
            ));
        }
        Some(distinct)
    } else {
        None
    };
    Ok(AlphaTable {
        entries,
        products_distinct,
    })
}

/// The eight off-diagonal exponents of the structure, all positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaOff {
    pub a21: u32,
    pub a31: u32,
    pub a32: u32,
    pub a42: u32,
    pub a13: u32,
    pub a43: u32,
    pub a24: u32,
    pub a14: u32,
}

/// A matrix entry `sign · x^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedMonomial {
    pub sign: i8,
    pub exponent: ExponentVector,
}

/// A binomial `x^lhs − x^rhs` in structure coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureBinomial {
    pub degree: i64,
    pub lhs: ExponentVector,
    pub rhs: ExponentVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfaffianStructure {
    /// `index_permutation[k]` is the canonical index of the structure's
    /// `n_{k+1}`.
    pub index_permutation: Vec<usize>,
    /// Generators in structure order.
    pub ordered_generators: Vec<i64>,
    /// `α_1..α_4` in structure order.
    pub alpha: Vec<i64>,
    pub alpha_off: AlphaOff,
    /// `f_1..f_5`.
    pub generators: Vec<StructureBinomial>,
    /// The 5×5 skew-symmetric matrix whose 4×4 Pfaffians are the `f_i`.
    pub skew_matrix: Vec<Vec<Option<SignedMonomial>>>,
    /// Whether `f_1..f_5` agree with [`minimal_generators`] up to sign and
    /// order. Minimal binomial generators are not unique in general, so the
    /// structure is validated by fiber connectivity instead.
    pub matches_computed_generators: bool,
}

impl PfaffianStructure {
    /// Rewrites structure coordinates in canonical order.
    pub fn to_canonical(&self, a: &ExponentVector) -> ExponentVector {
        let mut out = vec![0u32; a.dim()];
        for (k, &c) in self.index_permutation.iter().enumerate() {
            out[c] = a.get(k);
        }
        ExponentVector::new(out)
    }

    /// `f_1..f_5` in canonical coordinates.
    pub fn canonical_generators(&self) -> Vec<(ExponentVector, ExponentVector)> {
        self.generators
            .iter()
            .map(|f| (self.to_canonical(&f.lhs), self.to_canonical(&f.rhs)))
            .collect()
    }
}

fn ev4(c: [u32; 4]) -> ExponentVector {
    ExponentVector::new(c.to_vec())
}

fn unit_power(k: usize, p: u32) -> ExponentVector {
    let mut c = [0u32; 4];
    c[k] = p;
    ev4(c)
}

fn u32_of(x: i64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::Overflow)
}

/// Checks that `h` is symmetric, four-generated and not a complete
/// intersection, returning its minimal presentation.
fn require_gorenstein_non_ci(h: &NumericalSemigroup) -> Result<BinomialIdealPresentation> {
    let e = h.embedding_dim();
    if e != 4 {
        return Err(Error::NotFourGenerated(e));
    }
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let pres = minimal_generators(h)?;
    match pres.mu {
        3 => Err(Error::IsCompleteIntersection),
        5 => Ok(pres),
        mu => Err(Error::violation(
            "mu of a symmetric four-generated semigroup",
            format!("{h}: mu(I_H) = {mu}, expected 3 or 5"),
        )),
    }
}

fn skew_matrix(o: &AlphaOff) -> Vec<Vec<Option<SignedMonomial>>> {
    let m = |sign: i8, k: usize, p: u32| {
        Some(SignedMonomial {
            sign,
            exponent: unit_power(k, p),
        })
    };
    vec![
        vec![
            None,
            m(-1, 2, o.a43),
            None,
            m(-1, 1, o.a32),
            m(-1, 3, o.a24),
        ],
        vec![m(1, 2, o.a43), None, m(1, 3, o.a14), None, m(-1, 0, o.a31)],
        vec![
            None,
            m(-1, 3, o.a14),
            None,
            m(-1, 0, o.a21),
            m(-1, 1, o.a42),
        ],
        vec![m(1, 1, o.a32), None, m(1, 0, o.a21), None, m(-1, 2, o.a13)],
        vec![
            m(1, 3, o.a24),
            m(1, 0, o.a31),
            m(1, 1, o.a42),
            m(1, 2, o.a13),
            None,
        ],
    ]
}

fn structure_binomials(alpha: &[u32; 4], o: &AlphaOff, weights: &[i64]) -> Vec<StructureBinomial> {
    let pairs = [
        (unit_power(0, alpha[0]), ev4([0, 0, o.a13, o.a14])),
        (unit_power(1, alpha[1]), ev4([o.a21, 0, 0, o.a24])),
        (unit_power(2, alpha[2]), ev4([o.a31, o.a32, 0, 0])),
        (unit_power(3, alpha[3]), ev4([0, o.a42, o.a43, 0])),
        (ev4([o.a21, 0, o.a43, 0]), ev4([0, o.a32, 0, o.a14])),
    ];
    pairs
        .into_iter()
        .map(|(lhs, rhs)| StructureBinomial {
            degree: lhs.degree(weights),
            lhs,
            rhs,
        })
        .collect()
}

/// The Pfaffian of the 4×4 principal submatrix avoiding row and column `i`,
/// as a map from exponent vectors to coefficients.
fn pfaffian_without(m: &[Vec<Option<SignedMonomial>>], i: usize) -> BTreeMap<ExponentVector, i64> {
    let idx: Vec<usize> = (0..5).filter(|&k| k != i).collect();
    let (p, q, r, s) = (idx[0], idx[1], idx[2], idx[3]);
    let mut out: BTreeMap<ExponentVector, i64> = BTreeMap::new();
    for (sign, (a, b), (c, d)) in [
        (1, (p, q), (r, s)),
        (-1, (p, r), (q, s)),
        (1, (p, s), (q, r)),
    ] {
        if let (Some(x), Some(y)) = (&m[a][b], &m[c][d]) {
            let coeff = sign * i64::from(x.sign) * i64::from(y.sign);
            *out.entry(x.exponent.add(&y.exponent)).or_insert(0) += coeff;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Whether `moves` connect every fiber `{a : deg_H(a) = d}` for the given
/// degrees, which is equivalent to the binomials generating `I_H` when the
/// degrees include every Betti degree.
fn fibers_connected(
    h: &NumericalSemigroup,
    degrees: &[i64],
    moves: &[(ExponentVector, ExponentVector)],
) -> Result<bool> {
    for &d in degrees {
        let fiber = factorizations(h, d)?;
        let index: HashMap<&ExponentVector, usize> =
            fiber.iter().enumerate().map(|(k, a)| (a, k)).collect();
        let mut dsu = Dsu::new(fiber.len());
        for (k, a) in fiber.iter().enumerate() {
            for (u, v) in moves {
                for (from, to) in [(u, v), (v, u)] {
                    if let Some(c) = from.cofactor_in(a) {
                        if let Some(&other) = index.get(&c.add(to)) {
                            dsu.union(k, other);
                        }
                    }
                }
            }
        }
        let root = dsu.find(0);
        if (1..fiber.len()).any(|k| dsu.find(k) != root) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_up_to_sign(
    ours: &[(ExponentVector, ExponentVector)],
    pres: &BinomialIdealPresentation,
) -> bool {
    let norm = |u: &ExponentVector, v: &ExponentVector| {
        if u <= v {
            (u.clone(), v.clone())
        } else {
            (v.clone(), u.clone())
        }
    };
    let mut a: Vec<_> = ours.iter().map(|(u, v)| norm(u, v)).collect();
    let mut b: Vec<_> = pres
        .generators
        .iter()
        .map(|g| norm(&g.lhs, &g.rhs))
        .collect();
    a.sort();
    b.sort();
    a == b
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter().for_each(|&x| seen[x] = true);
                    if seen.iter().all(|&s| s) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Off-diagonal exponent pairs `(x, y)` with `α_k n_k = x n_p + y n_q`
/// (structure indices `p < q`), drawn from the α table.
fn split_pairs(
    table: &AlphaTable,
    perm: &[usize; 4],
    k: usize,
    p: usize,
    q: usize,
) -> Vec<(u32, u32)> {
    table.entries[perm[k]]
        .factorizations
        .iter()
        .map(|a| a.permuted(perm))
        .filter(|a| a.support().collect::<Vec<_>>() == [p, q])
        .map(|a| (a.get(p), a.get(q)))
        .collect()
}

/// Validates the Pfaffian structure in a fixed relabeling, where
/// `perm[k]` is the canonical index of the structure's `n_{k+1}`.
pub fn pfaffian_structure_for(
    h: &NumericalSemigroup,
    perm: &[usize],
) -> Result<Option<PfaffianStructure>> {
    let pres = require_gorenstein_non_ci(h)?;
    let table = alpha_table(h)?;
    let perm: [usize; 4] = perm
        .try_into()
        .map_err(|_| Error::InvalidParameter("a relabeling of four indices".into()))?;
    let mut seen = [false; 4];
    for &c in &perm {
        if c >= 4 || seen[c] {
            return Err(Error::InvalidParameter(format!(
                "{perm:?} is not a permutation"
            )));
        }
        seen[c] = true;
    }
    structure_in(h, &pres, &table, &perm)
}

fn structure_in(
    h: &NumericalSemigroup,
    pres: &BinomialIdealPresentation,
    table: &AlphaTable,
    perm: &[usize; 4],
) -> Result<Option<PfaffianStructure>> {
    let weights: Vec<i64> = perm.iter().map(|&c| h.generator(c)).collect();
    let alpha_i64: Vec<i64> = perm.iter().map(|&c| table.entries[c].alpha).collect();
    let alpha = [
        u32_of(alpha_i64[0])?,
        u32_of(alpha_i64[1])?,
        u32_of(alpha_i64[2])?,
        u32_of(alpha_i64[3])?,
    ];
    let f1 = split_pairs(table, perm, 0, 2, 3); // (α13, α14)
    let f2 = split_pairs(table, perm, 1, 0, 3); // (α21, α24)
    let f3 = split_pairs(table, perm, 2, 0, 1); // (α31, α32)
    let f4 = split_pairs(table, perm, 3, 1, 2); // (α42, α43)
    let mut degrees = pres.betti_degrees.clone();
    degrees.dedup();
    for &(a13, a14) in &f1 {
        for &(a21, a24) in &f2 {
            for &(a31, a32) in &f3 {
                for &(a42, a43) in &f4 {
                    let o = AlphaOff {
                        a21,
                        a31,
                        a32,
                        a42,
                        a13,
                        a43,
                        a24,
                        a14,
                    };
                    if alpha[0] != a21 + a31
                        || alpha[1] != a32 + a42
                        || alpha[2] != a13 + a43
                        || alpha[3] != a24 + a14
                    {
                        continue;
                    }
                    let gens = structure_binomials(&alpha, &o, &weights);
                    if gens.iter().any(|f| f.rhs.degree(&weights) != f.degree) {
                        continue;
                    }
                    let mut s = PfaffianStructure {
                        index_permutation: perm.to_vec(),
                        ordered_generators: weights.clone(),
                        alpha: alpha_i64.clone(),
                        alpha_off: o,
                        generators: gens,
                        skew_matrix: skew_matrix(&o),
                        matches_computed_generators: false,
                    };
                    let canonical = s.canonical_generators();
                    if !fibers_connected(h, &degrees, &canonical)? {
                        continue;
                    }
                    s.matches_computed_generators = same_up_to_sign(&canonical, pres);
                    check_pfaffians(h, &s)?;
                    return Ok(Some(s));
                }
            }
        }
    }
    Ok(None)
}

fn check_pfaffians(h: &NumericalSemigroup, s: &PfaffianStructure) -> Result<()> {
    for (i, f) in s.generators.iter().enumerate() {
        let pf = pfaffian_without(&s.skew_matrix, i);
        let plus = BTreeMap::from([(f.lhs.clone(), 1), (f.rhs.clone(), -1)]);
        let minus = BTreeMap::from([(f.lhs.clone(), -1), (f.rhs.clone(), 1)]);
        if pf != plus && pf != minus {
            return Err(Error::violation(
                "Pfaffians of the skew matrix",
                format!("{h}: Pf(M({})) is not ±f_{}", i + 1, i + 1),
            ));
        }
    }
    Ok(())
}

/// The Pfaffian structure in the lexicographically least relabeling that
/// admits one.
pub fn pfaffian_structure(h: &NumericalSemigroup) -> Result<PfaffianStructure> {
    let pres = require_gorenstein_non_ci(h)?;
    let table = alpha_table(h)?;
    for perm in permutations4() {
        if let Some(s) = structure_in(h, &pres, &table, &perm)? {
            return Ok(s);
        }
    }
    Err(Error::StructureNotFound(h.to_string()))
}

/// Every relabeling that admits a Pfaffian structure, in lexicographic order.
pub fn pfaffian_structures(h: &NumericalSemigroup) -> Result<Vec<PfaffianStructure>> {
    let pres = require_gorenstein_non_ci(h)?;
    let table = alpha_table(h)?;
    let mut out = Vec::new();
    for perm in permutations4() {
        if let Some(s) = structure_in(h, &pres, &table, &perm)? {
            out.push(s);
        }
    }
    if out.is_empty() {
        return Err(Error::StructureNotFound(h.to_string()));
    }
    Ok(out)
}

/// An index `i` where `Fr(H) + n_i` has exactly two factorizations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFactorizationWitness {
    /// Canonical index.
    pub index: usize,
    pub factorizations: Vec<ExponentVector>,
}

/// Every index where `Fr(H) + n_i` has exactly two factorizations, in
/// canonical order.
pub fn two_factorization_witnesses(h: &NumericalSemigroup) -> Result<Vec<TwoFactorizationWitness>> {
    require_gorenstein_non_ci(h)?;
    let engine = h.engine()?;
    let mut out = Vec::new();
    for i in 0..4 {
        let m = h.frobenius() + h.generator(i);
        if engine.count_up_to(m, 3)? == 2 {
            out.push(TwoFactorizationWitness {
                index: i,
                factorizations: engine.factorizations(m)?,
            });
        }
    }
    Ok(out)
}

/// The first witness of [`two_factorization_witnesses`].
pub fn two_factorization_witness(h: &NumericalSemigroup) -> Result<TwoFactorizationWitness> {
    two_factorization_witnesses(h)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::NoWitness(h.to_string()))
}

/// Memberships `α_j n_j ∈ Ap(H, n_i)` and the derived checks on four
/// generators. Indices are canonical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NufReport {
    /// No `Fr(H) + n_i` has a unique factorization.
    pub no_unique_factorization: bool,
    /// `in_apery[i]` lists the `j` with `α_j n_j ∈ Ap(H, n_i)`.
    pub in_apery: Vec<Vec<usize>>,
    pub every_index_covered: bool,
    pub coinciding_products: bool,
    pub at_most_two: bool,
    pub unique_bounded_factorization: bool,
    /// Relabeling realizing the cyclic case, if any.
    pub cyclic_relabeling: Option<Vec<usize>>,
    /// Relabeling realizing the paired case, if any.
    pub paired_relabeling: Option<Vec<usize>>,
}

impl NufReport {
    pub fn all_hold(&self) -> bool {
        self.no_unique_factorization
            && self.every_index_covered
            && self.coinciding_products
            && self.at_most_two
            && self.unique_bounded_factorization
            && (self.cyclic_relabeling.is_some() || self.paired_relabeling.is_some())
    }
}

pub fn nuf_report(h: &NumericalSemigroup) -> Result<NufReport> {
    if h.embedding_dim() != 4 {
        return Err(Error::NotFourGenerated(h.embedding_dim()));
    }
    let table = alpha_table(h)?;
    let engine = h.engine()?;
    let fr = h.frobenius();
    let mut no_unique_factorization = true;
    let mut in_apery = Vec::with_capacity(4);
    for i in 0..4 {
        let ni = h.generator(i);
        if engine.count_up_to(fr + ni, 2)? < 2 {
            no_unique_factorization = false;
        }
        let row: Vec<usize> = (0..4)
            .filter(|&j| {
                let p = table.entries[j].product;
                h.contains(p) && !h.contains(p - ni)
            })
            .collect();
        in_apery.push(row);
    }
    let every_index_covered = in_apery.iter().all(|r| !r.is_empty());
    let coinciding_products = in_apery.iter().all(|r| {
        r.iter()
            .all(|&j| table.entries[j].product == table.entries[r[0]].product)
    });
    let at_most_two = in_apery.iter().all(|r| r.len() <= 2);
    let mut unique_bounded_factorization = true;
    for (i, row) in in_apery.iter().enumerate() {
        for &j in row {
            let aj = u32_of(table.entries[j].alpha)?;
            let mut count = 0usize;
            let _ = engine.for_each(fr + h.generator(i), |a| {
                if a[j] < aj {
                    count += 1;
                }
                if count > 1 {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })?;
            if count != 1 {
                unique_bounded_factorization = false;
            }
        }
    }
    let rel = |i: usize, j: usize| in_apery[i].contains(&j);
    let mut cyclic_relabeling = None;
    let mut paired_relabeling = None;
    for s in permutations4() {
        if cyclic_relabeling.is_none()
            && rel(s[0], s[3])
            && rel(s[1], s[0])
            && rel(s[2], s[1])
            && rel(s[3], s[2])
        {
            cyclic_relabeling = Some(s.to_vec());
        }
        if paired_relabeling.is_none()
            && rel(s[0], s[3])
            && rel(s[3], s[0])
            && rel(s[1], s[2])
            && rel(s[2], s[1])
        {
            paired_relabeling = Some(s.to_vec());
        }
    }
    Ok(NufReport {
        no_unique_factorization,
        in_apery,
        every_index_covered,
        coinciding_products,
        at_most_two,
        unique_bounded_factorization,
        cyclic_relabeling,
        paired_relabeling,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JShapeBranch {
    /// `X_2^{α_42}X_3^{α_43}` does not divide `X_2^{α_32−1}X_3^{α_13−1}`.
    TwoTerm,
    Series,
}

/// Checks tied to one structure relabeling. Polynomials and exponent
/// vectors are in its structure coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelingCheck {
    pub index_permutation: Vec<usize>,
    /// The two factorizations of `Fr(H) + n_1`
    /// `(0, α_2−1, α_3−1, α_14−1)` and `(0, α_32−1, α_13−1, α_4+α_14−1)`.
    pub stated_factorizations: [ExponentVector; 2],
    pub branch: JShapeBranch,
    pub j: InversePolynomial,
    /// `Σ_{k≥0} X_2^{α_32−1−(k−1)α_42} X_3^{α_13−1−(k−1)α_43} X_4^{α_14−1+kα_4}`
    /// over the `k` with nonnegative exponents.
    pub predicted_j: InversePolynomial,
    /// Whether the uncorrected series `Σ_{k≥0} X_2^{α_32−1−kα_42}
    /// X_3^{α_13−1−kα_43} X_4^{(k+1)α_4}` equals `J`. It omits the term
    /// `X_2^{α_2−1}X_3^{α_3−1}X_4^{α_14−1}` and the factor `X_4^{α_14−1}`.
    pub uncorrected_series_matches: bool,
    /// Nonzero entries of the skew matrix satisfying
    /// `Fr(H) + N = deg M_ij + deg f_i + deg f_j`.
    pub degree_identity_entries: usize,
}

/// The bundle of checks on a symmetric non-complete-intersection
/// four-generated semigroup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourGorCertificate {
    /// The lexicographically least structure.
    pub structure: PfaffianStructure,
    pub frobenius: i64,
    pub generator_sum: i64,
    /// One entry per relabeling admitting a structure; the first belongs to
    /// `structure`.
    pub labelings: Vec<LabelingCheck>,
    pub nuf: NufReport,
    pub mu: usize,
    pub witnesses: Vec<TwoFactorizationWitness>,
    /// `μ(Ann(J_{Fr+n_i})) − 1` at the first witness, which equals
    /// `μ((I_H + (x_i))/(x_i))`.
    pub witness_mu_mod_xi: usize,
    pub witness_two_term: Option<TwoTermCertificate>,
}

impl FourGorCertificate {
    /// The check for a given relabeling, if it admits a structure.
    pub fn labeling(&self, perm: &[usize]) -> Option<&LabelingCheck> {
        self.labelings.iter().find(|l| l.index_permutation == perm)
    }
}

fn predicted_series(alpha: &[i64], o: &AlphaOff) -> Result<InversePolynomial> {
    let a = |x: i64| u32_of(x);
    let (p2, p3, p4) = (
        i64::from(o.a32) - 1,
        i64::from(o.a13) - 1,
        i64::from(o.a14) - 1,
    );
    let mut terms = Vec::new();
    let mut k = 0i64;
    loop {
        let e2 = p2 - (k - 1) * i64::from(o.a42);
        let e3 = p3 - (k - 1) * i64::from(o.a43);
        if e2 < 0 || e3 < 0 {
            break;
        }
        terms.push(ev4([0, a(e2)?, a(e3)?, a(p4 + k * alpha[3])?]));
        k += 1;
    }
    InversePolynomial::sum_of(4, terms)
}

fn uncorrected_series(alpha: &[i64], o: &AlphaOff) -> Result<InversePolynomial> {
    let (p2, p3) = (i64::from(o.a32) - 1, i64::from(o.a13) - 1);
    let mut terms = Vec::new();
    let mut k = 0i64;
    loop {
        let e2 = p2 - k * i64::from(o.a42);
        let e3 = p3 - k * i64::from(o.a43);
        if e2 < 0 || e3 < 0 {
            break;
        }
        terms.push(ev4([
            0,
            u32_of(e2)?,
            u32_of(e3)?,
            u32_of((k + 1) * alpha[3])?,
        ]));
        k += 1;
    }
    InversePolynomial::sum_of(4, terms)
}

fn check_labeling(h: &NumericalSemigroup, s: &PfaffianStructure) -> Result<LabelingCheck> {
    let fr = h.frobenius();
    let w = &s.ordered_generators;
    let n_sum: i64 = w.iter().sum();
    let (al, o) = (&s.alpha, &s.alpha_off);
    let fail = |claim: &'static str, detail: String| {
        Err(Error::violation(
            claim,
            format!("{h} relabeled as {w:?}: {detail}"),
        ))
    };

    let v1 = ev4([0, u32_of(al[1] - 1)?, u32_of(al[2] - 1)?, o.a14 - 1]);
    let v2 = ev4([
        0,
        o.a32 - 1,
        o.a13 - 1,
        u32_of(al[3] + i64::from(o.a14) - 1)?,
    ]);
    for v in [&v1, &v2] {
        if v.degree(w) != fr + w[0] {
            return fail(
                "two factorizations of Fr + n_1",
                format!("{v} has degree {}", v.degree(w)),
            );
        }
    }

    let j = inverse_polynomial(h, fr + w[0])?.permuted(&s.index_permutation);
    let branch = if o.a42 < o.a32 && o.a43 < o.a13 {
        JShapeBranch::Series
    } else {
        JShapeBranch::TwoTerm
    };
    let predicted_j = predicted_series(al, o)?;
    if branch == JShapeBranch::TwoTerm && predicted_j.len() != 2 {
        return fail("shape of J", "two-term branch with a longer series".into());
    }
    if predicted_j != j {
        return fail("shape of J", format!("predicted {predicted_j}, direct {j}"));
    }
    let uncorrected_series_matches = uncorrected_series(al, o)? == j;

    let mut degree_identity_entries = 0;
    for (i, row) in s.skew_matrix.iter().enumerate() {
        for (k, entry) in row.iter().enumerate() {
            if let Some(m) = entry {
                let total = m.exponent.degree(w) + s.generators[i].degree + s.generators[k].degree;
                if total != fr + n_sum {
                    return fail(
                        "degree identity",
                        format!(
                            "entry ({}, {}) gives {total}, expected {}",
                            i + 1,
                            k + 1,
                            fr + n_sum
                        ),
                    );
                }
                degree_identity_entries += 1;
            }
        }
    }
    Ok(LabelingCheck {
        index_permutation: s.index_permutation.clone(),
        stated_factorizations: [v1, v2],
        branch,
        j,
        predicted_j,
        uncorrected_series_matches,
        degree_identity_entries,
    })
}

/// Runs every check on every structure relabeling; any failure is reported
/// as a theorem violation.
pub fn verify_4gor(h: &NumericalSemigroup) -> Result<FourGorCertificate> {
    let pres = require_gorenstein_non_ci(h)?;
    let structures = pfaffian_structures(h)?;
    let labelings = structures
        .iter()
        .map(|s| check_labeling(h, s))
        .collect::<Result<Vec<_>>>()?;
    let fr = h.frobenius();

    let nuf = nuf_report(h)?;
    if !nuf.all_hold() {
        return Err(Error::violation(
            "Apery memberships of alpha_j n_j",
            format!("{h}: {nuf:?}"),
        ));
    }

    let witnesses = two_factorization_witnesses(h)?;
    let first = witnesses
        .first()
        .ok_or_else(|| Error::NoWitness(h.to_string()))?;
    let i = first.index;
    let ann = annihilator_of_semigroup_j(h, fr + h.generator(i))?;
    let witness_mu_mod_xi = ann.mu.expect("semigroup annihilators carry mu") - 1;
    let direct = mu_modulo(h, i)?;
    if witness_mu_mod_xi != direct || !matches!(witness_mu_mod_xi, 3 | 5) {
        return Err(Error::violation(
            "two-term J generator count",
            format!(
                "{h}, index {}: mu(Ann J/(x_i)) = {witness_mu_mod_xi}, mu((I_H+(x_i))/(x_i)) = {direct}",
                i + 1
            ),
        ));
    }
    let witness_two_term = two_term_check(h, i)?;

    Ok(FourGorCertificate {
        structure: structures.into_iter().next().expect("nonempty"),
        frobenius: fr,
        generator_sum: h.generators().iter().sum(),
        labelings,
        nuf,
        mu: pres.mu,
        witnesses,
        witness_mu_mod_xi,
        witness_two_term,
    })
}
