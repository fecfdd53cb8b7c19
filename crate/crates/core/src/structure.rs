//! Free semigroups, complete intersections in one degree, the family
//! `H_{e,c}`, and the shape of `J_{H,Fr+n_1}` for symmetric semigroups of
//! multiplicity at most `e + 3`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;
use crate::factorization::{has_unique_factorization, minimal_generators};
use crate::inverse_poly::inverse_polynomial;
use crate::polynomial::InversePolynomial;
use crate::semigroup::NumericalSemigroup;

/// An ordering of the generators satisfying the telescopic condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessWitness {
    /// Canonical indices of the generators in witness order.
    pub ordering: Vec<usize>,
    /// `d_2, …, d_{e+1}` with `d_i = gcd(n_1, …, n_{i−1})` in witness order.
    pub gcd_chain: Vec<i64>,
    /// `Σ_{i≥2} (d_i/d_{i+1} − 1) n_i − n_1`.
    pub telescopic_frobenius: i64,
}

/// Searches for a free ordering, returning the lexicographically least one.
///
/// Any valid ordering has a strictly decreasing gcd chain (a repeated `d_i`
/// would make `n_i` a combination of earlier generators), so branches where
/// the gcd does not drop, or reaches 1 early, are cut.
pub fn is_free(h: &NumericalSemigroup) -> Result<Option<FreenessWitness>> {
    let e = h.embedding_dim();
    let gens = h.generators();
    let mut order = Vec::with_capacity(e);
    let mut used = vec![false; e];
    let mut chain = Vec::with_capacity(e);
    for first in 0..e {
        order.push(first);
        used[first] = true;
        chain.push(gens[first]);
        if extend(gens, &mut order, &mut used, &mut chain)? {
            let witness = witness_from(gens, order, chain);
            if witness.telescopic_frobenius != h.frobenius() {
                return Err(Error::violation(
                    "telescopic Frobenius formula",
                    format!(
                        "{h}: formula gives {}, direct {}",
                        witness.telescopic_frobenius,
                        h.frobenius()
                    ),
                ));
            }
            return Ok(Some(witness));
        }
        order.pop();
        used[first] = false;
        chain.pop();
    }
    Ok(None)
}

fn extend(
    gens: &[i64],
    order: &mut Vec<usize>,
    used: &mut [bool],
    chain: &mut Vec<i64>,
) -> Result<bool> {
    let e = gens.len();
    if order.len() == e {
        return Ok(*chain.last().expect("nonempty") == 1);
    }
    let d = *chain.last().expect("nonempty");
    let remaining = e - order.len();
    for next in 0..e {
        if used[next] {
            continue;
        }
        let n = gens[next];
        let d_next = num_integer::gcd(d, n);
        if d_next == d || (d_next == 1 && remaining > 1) {
            continue;
        }
        let scaled: Vec<i64> = order.iter().map(|&k| gens[k] / d).collect();
        let prefix = NumericalSemigroup::new(&scaled)?;
        if !prefix.contains(n / d_next) {
            continue;
        }
        order.push(next);
        used[next] = true;
        chain.push(d_next);
        if extend(gens, order, used, chain)? {
            return Ok(true);
        }
        order.pop();
        used[next] = false;
        chain.pop();
    }
    Ok(false)
}

fn witness_from(gens: &[i64], ordering: Vec<usize>, chain: Vec<i64>) -> FreenessWitness {
    let n: Vec<i64> = ordering.iter().map(|&k| gens[k]).collect();
    // chain[k] = d_{k+2}: chain[0] = n_1 = d_2.
    let mut fr = -n[0];
    for i in 1..n.len() {
        fr += (chain[i - 1] / chain[i] - 1) * n[i];
    }
    FreenessWitness {
        ordering,
        gcd_chain: chain,
        telescopic_frobenius: fr,
    }
}

/// Freeness against monomiality of `J_{Fr+n_i}` for a symmetric semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialCriterion {
    pub free: Option<FreenessWitness>,
    /// Canonical indices `i` for which `Fr + n_i` has a unique factorization.
    pub monomial_indices: Vec<usize>,
}

/// For symmetric `H`: free exactly when some `J_{Fr+m}`, `m ∈ H_+`, is a
/// monomial. It suffices to look at `m = n_i`, since a monomial
/// `J_{Fr+m}` with `m − n_i ∈ H` contracts to the monomial `J_{Fr+n_i}`.
///
/// Only "monomial ⇒ free" holds in general. `⟨10,15,18,27⟩` is free with no
/// monomial `J_{Fr+m}` and is reported as a theorem violation.
pub fn monomial_criterion(h: &NumericalSemigroup) -> Result<MonomialCriterion> {
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let free = is_free(h)?;
    let mut monomial_indices = Vec::new();
    for (i, &n) in h.generators().iter().enumerate() {
        if has_unique_factorization(h, h.frobenius() + n)? {
            monomial_indices.push(i);
        }
    }
    if free.is_some() == monomial_indices.is_empty() {
        return Err(Error::violation(
            "free iff some J_(Fr+m) is a monomial",
            format!(
                "{h}: free = {}, monomial indices {monomial_indices:?}",
                free.is_some()
            ),
        ));
    }
    Ok(MonomialCriterion {
        free,
        monomial_indices,
    })
}

/// `α_1, …, α_e` (canonical order) when `I_H` is a complete intersection
/// generated in the single degree `d = Π α_i`, detected through every
/// `J_{Fr+n_i}` being a monomial with `n_j = Π_{i≠j} α_i`.
///
/// Monomiality of every `J_{Fr+n_i}` alone is not enough: for `⟨3,4,5⟩`
/// they are `X_3`, `X_1^2` and `X_1X_2`, but the exponents do not come from
/// one tuple of alphas, and `I_H` is not a complete intersection.
pub fn ci_same_degree(h: &NumericalSemigroup) -> Result<Option<Vec<i64>>> {
    let e = h.embedding_dim();
    if e < 2 {
        return Ok(None);
    }
    let mut alphas: Vec<Option<i64>> = vec![None; e];
    for i in 0..e {
        let j = inverse_polynomial(h, h.frobenius() + h.generator(i))?;
        if !j.is_monomial() {
            return Ok(None);
        }
        let a = j.exponents().next().expect("monomial");
        if a.get(i) != 0 {
            return Ok(None);
        }
        for k in (0..e).filter(|&k| k != i) {
            let alpha = i64::from(a.get(k)) + 1;
            match alphas[k] {
                None => alphas[k] = Some(alpha),
                Some(prev) if prev != alpha => return Ok(None),
                Some(_) => {}
            }
        }
    }
    let alphas: Vec<i64> = alphas
        .into_iter()
        .map(|a| a.expect("e ≥ 2 fills all"))
        .collect();
    let Some(d) = alphas.iter().try_fold(1i64, |acc, &a| acc.checked_mul(a)) else {
        return Err(Error::Overflow);
    };
    let fits = alphas.iter().zip(h.generators()).all(|(&a, &n)| a * n == d);
    Ok(fits.then_some(alphas))
}

/// `⟨Π_{i≠j} α_i : j⟩`, checked to be detected back by [`ci_same_degree`].
pub fn construct_from_alphas(alphas: &[i64]) -> Result<NumericalSemigroup> {
    if alphas.len() < 2 {
        return Err(Error::InvalidParameter(
            "at least two alphas are needed".into(),
        ));
    }
    if alphas.iter().any(|&a| a <= 1) {
        return Err(Error::AlphaTooSmall);
    }
    for (k, &a) in alphas.iter().enumerate() {
        if alphas[k + 1..].iter().any(|&b| num_integer::gcd(a, b) != 1) {
            return Err(Error::NotCoprimeAlphas);
        }
    }
    let d = alphas
        .iter()
        .try_fold(1i64, |acc, &a| acc.checked_mul(a))
        .ok_or(Error::Overflow)?;
    let gens: Vec<i64> = alphas.iter().map(|&a| d / a).collect();
    let h = NumericalSemigroup::new(&gens)?;
    let detected = ci_same_degree(&h)?;
    let expected: Vec<i64> = h.generators().iter().map(|&n| d / n).collect();
    if detected.as_deref() != Some(expected.as_slice()) {
        return Err(Error::violation(
            "complete intersection in one degree",
            format!("{h} built from {alphas:?} detected as {detected:?}"),
        ));
    }
    Ok(h)
}

/// At most `p − 1` minimal generators of a complete intersection `I_H` lie
/// in any ideal generated by `p` variables. Returns the number of variable
/// subsets checked.
pub fn variable_ideal_check(h: &NumericalSemigroup) -> Result<usize> {
    let e = h.embedding_dim();
    if e < 2 {
        return Ok(0);
    }
    if e > 20 {
        return Err(Error::InvalidParameter(format!(
            "{e} variables is too many subsets"
        )));
    }
    let pres = minimal_generators(h)?;
    if pres.mu != e - 1 {
        return Err(Error::NotApplicable("I_H is not a complete intersection"));
    }
    let masks: Vec<(u32, u32)> = pres
        .generators
        .iter()
        .map(|b| (support_mask(&b.lhs), support_mask(&b.rhs)))
        .collect();
    for set in 1u32..(1 << e) {
        let p = set.count_ones() as usize;
        let inside = masks
            .iter()
            .filter(|&&(u, v)| u & set != 0 && v & set != 0)
            .count();
        if inside > p - 1 {
            return Err(Error::violation(
                "generators in a variable ideal",
                format!("{h}: {inside} generators lie in the ideal of variables {set:#b}"),
            ));
        }
    }
    Ok((1 << e) - 1)
}

fn support_mask(a: &ExponentVector) -> u32 {
    a.support().fold(0, |m, i| m | (1 << i))
}

/// `H_{e,c}` with its predicted Frobenius number and `J_{H, Fr+e+c}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HecConstruction {
    pub e: usize,
    pub c: usize,
    pub generators: Vec<i64>,
    pub frobenius: i64,
    pub predicted_frobenius: i64,
    pub j: InversePolynomial,
    pub predicted_j: InversePolynomial,
    /// Which of the four `J` formulas applies.
    pub branch: HecBranch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HecBranch {
    /// `c = 1`, `e` even.
    LinearEven,
    /// `c = 1`, `e` odd.
    LinearOdd,
    /// `c > 1`, `e` even.
    PowerEven,
    /// `c > 1`, `e` odd.
    PowerOdd,
}

/// The generators of `H_{e,c}` in their defining order.
pub fn h_ec_generators(e: usize, c: usize) -> Result<Vec<i64>> {
    if e < 2 || c < 1 {
        return Err(Error::InvalidParameter(format!(
            "need e > 1 and c > 0, got e = {e}, c = {c}"
        )));
    }
    if e % 2 == 1 && c % 2 == 1 && c > 1 {
        return Err(Error::BothOdd { e, c });
    }
    let (ei, ci) = (e as i64, c as i64);
    let gens = if c == 1 {
        (ei + 1..=2 * ei).collect()
    } else if c.is_multiple_of(2) {
        let mut g = vec![ei + ci, ei + ci + 1];
        g.extend((3..=ei).map(|i| (ci * ci + (ei + 2) * ci + 2 * (i - 1)) / 2));
        g
    } else {
        let mut g = vec![ei + ci, ei + ci + 2];
        g.extend((3..=ei).map(|i| (ci * ci + (ei + 3) * ci + 4 * (i - 1) - ei) / 2));
        g
    };
    Ok(gens)
}

/// Builds `H_{e,c}` and checks minimality, symmetry, multiplicity `e + c`,
/// the Frobenius number and `J_{H, Fr+e+c}` against direct computation.
pub fn construct_h_ec(e: usize, c: usize) -> Result<HecConstruction> {
    let gens = h_ec_generators(e, c)?;
    let h = NumericalSemigroup::new(&gens)?;
    let (ei, ci) = (e as i64, c as i64);
    let fail = |what: String| {
        Err(Error::violation(
            "H_(e,c) construction",
            format!("e = {e}, c = {c}: {what}"),
        ))
    };
    if !h.was_minimal() || h.generators() != gens.as_slice() {
        return fail(format!("{gens:?} is not a minimal increasing system ({h})"));
    }
    if !h.is_symmetric() {
        return fail(format!("{h} is not symmetric"));
    }
    if h.multiplicity() != ei + ci {
        return fail(format!("multiplicity {} != e + c", h.multiplicity()));
    }
    let predicted_frobenius = if c == 1 {
        2 * ei + 1
    } else if c.is_multiple_of(2) {
        ci * ci + (ei + 1) * ci + 1
    } else {
        ci * ci + (ei + 2) * ci + 2
    };
    if predicted_frobenius != h.frobenius() {
        return fail(format!(
            "Fr = {}, predicted {predicted_frobenius}",
            h.frobenius()
        ));
    }
    let branch = match (c == 1, e.is_multiple_of(2)) {
        (true, true) => HecBranch::LinearEven,
        (true, false) => HecBranch::LinearOdd,
        (false, true) => HecBranch::PowerEven,
        (false, false) => HecBranch::PowerOdd,
    };
    let predicted_j = h_ec_j(e, c, branch)?;
    let j = inverse_polynomial(&h, h.frobenius() + ei + ci)?;
    if j != predicted_j {
        return fail(format!("J = {j}, predicted {predicted_j}"));
    }
    Ok(HecConstruction {
        e,
        c,
        generators: gens,
        frobenius: h.frobenius(),
        predicted_frobenius,
        j,
        predicted_j,
        branch,
    })
}

/// The four-branch formula, 1-based indices as written.
fn h_ec_j(e: usize, c: usize, branch: HecBranch) -> Result<InversePolynomial> {
    let mono = |pairs: &[(usize, u32)]| {
        let mut v = vec![0u32; e];
        for &(i, k) in pairs {
            v[i - 1] += k;
        }
        ExponentVector::new(v)
    };
    let ep = e / 2;
    let mut terms = Vec::new();
    match branch {
        HecBranch::LinearEven => {
            terms.extend((2..=ep).map(|k| mono(&[(k, 1), (e + 2 - k, 1)])));
            terms.push(mono(&[(ep + 1, 2)]));
        }
        HecBranch::LinearOdd => {
            terms.extend((2..=ep + 1).map(|k| mono(&[(k, 1), (e + 2 - k, 1)])));
        }
        HecBranch::PowerEven | HecBranch::PowerOdd => {
            terms.push(mono(&[(2, c as u32 + 1)]));
            terms.extend((3..=ep + 1).map(|k| mono(&[(k, 1), (e + 3 - k, 1)])));
            if branch == HecBranch::PowerOdd {
                terms.push(mono(&[(ep + 2, 2)]));
            }
        }
    }
    InversePolynomial::sum_of(e, terms)
}

/// Case labels for `J_{H,Fr+n_1}` when `n_1 ≤ e + 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapeVariant {
    /// `n_1 = e+1`, `e` odd: pairs only.
    #[serde(rename = "1")]
    One,
    /// `n_1 = e+1`, `e` even: pairs and one square.
    #[serde(rename = "2")]
    Two,
    /// `n_1 = e+2`, `e` odd: `X_2^3`, pairs and one square.
    #[serde(rename = "3")]
    Three,
    /// `n_1 = e+2`, `e` even: `X_2^3` and pairs.
    #[serde(rename = "4")]
    Four,
    /// `n_1 = e+3`: `X_i^2X_j` plus order-two monomials.
    #[serde(rename = "5")]
    Five,
    /// `n_1 = e+3`, `e` even: `X_2^4` and pairs.
    #[serde(rename = "6b")]
    SixB,
}

impl ShapeVariant {
    pub fn label(self) -> &'static str {
        match self {
            ShapeVariant::One => "1",
            ShapeVariant::Two => "2",
            ShapeVariant::Three => "3",
            ShapeVariant::Four => "4",
            ShapeVariant::Five => "5",
            ShapeVariant::SixB => "6b",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeTag {
    /// `n_1 − e`, one of 1, 2, 3.
    pub multiplicity_offset: usize,
    pub variant: ShapeVariant,
    /// One entry per monomial of `J`: its 1-based variable indices with
    /// multiplicity, e.g. `[2, 2, 3]` for `X_2^2X_3`. Lex-descending order.
    pub pair_matching: Vec<Vec<usize>>,
    pub j: InversePolynomial,
}

/// Matches `J_{H,Fr+n_1}` against the case list for symmetric `H` with
/// `n_1 ∈ {e+1, e+2, e+3}`, and checks the pair-sum identities
/// `n_2 + n_e = n_3 + n_{e−1} = … = Fr + e + 1` (for `n_1 = e+1`) and
/// `3n_2 = n_3 + n_e = … = Fr + e + 2` (for `n_1 = e+2`).
pub fn classify_small_multiplicity(h: &NumericalSemigroup) -> Result<ShapeTag> {
    if !h.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let e = h.embedding_dim();
    let n1 = h.multiplicity();
    let offset = n1 - e as i64;
    if !(1..=3).contains(&offset) {
        return Err(Error::MultiplicityOutOfRange {
            multiplicity: n1,
            e,
        });
    }
    let m = h.frobenius() + n1;
    let j = inverse_polynomial(h, m)?;
    let no_match = |why: &str| Err(Error::NoShapeMatch(format!("{h}: J = {j} ({why})")));

    let pair_matching: Vec<Vec<usize>> = j
        .terms()
        .keys()
        .rev()
        .map(|a| {
            a.coords()
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| std::iter::repeat_n(i + 1, k as usize))
                .collect()
        })
        .collect();
    // Every X_p, p ≥ 2, appears in exactly one monomial, with coefficient 1.
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for term in &pair_matching {
        let mut vars = term.clone();
        vars.dedup();
        for v in vars {
            *seen.entry(v).or_default() += 1;
        }
    }
    if j.terms().values().any(|c| *c != 1.into())
        || seen.contains_key(&1)
        || seen.len() != e - 1
        || seen.values().any(|&k| k != 1)
    {
        return no_match("some variable does not appear exactly once");
    }
    let order_of = |t: &Vec<usize>| t.len();
    let high: Vec<&Vec<usize>> = pair_matching.iter().filter(|t| order_of(t) > 2).collect();
    if pair_matching.iter().any(|t| order_of(t) < 2) {
        return no_match("a monomial of order below two");
    }
    let squares = pair_matching
        .iter()
        .filter(|t| t.len() == 2 && t[0] == t[1])
        .count();
    let even = e.is_multiple_of(2);
    let variant = match offset {
        1 => {
            if !high.is_empty() {
                return no_match("order above two");
            }
            match (even, squares) {
                (false, 0) => ShapeVariant::One,
                (true, 1) => ShapeVariant::Two,
                _ => return no_match("wrong number of squares"),
            }
        }
        2 => {
            if high.len() != 1 || *high[0] != vec![2, 2, 2] {
                return no_match("expected a single cube X_2^3");
            }
            match (even, squares) {
                (false, 1) => ShapeVariant::Three,
                (true, 0) => ShapeVariant::Four,
                _ => return no_match("wrong number of squares"),
            }
        }
        _ => match high.as_slice() {
            [t] if t.len() == 3 && t[0] != t[2] && (t[0] == t[1] || t[1] == t[2]) => {
                if squares != usize::from(even) {
                    return no_match("wrong number of squares");
                }
                ShapeVariant::Five
            }
            [t] if even && **t == vec![2, 2, 2, 2] && squares == 0 => ShapeVariant::SixB,
            _ => return no_match("no X_i^2X_j and no admissible fourth power"),
        },
    };
    let g = |i: usize| h.generator(i - 1);
    let target = h.frobenius() + n1;
    match offset {
        1 => {
            for k in 2..=e {
                if g(k) + g(e + 2 - k) != target {
                    return Err(Error::violation(
                        "pair sums for multiplicity e+1",
                        format!("{h}: n_{k} + n_{} != Fr + e + 1 = {target}", e + 2 - k),
                    ));
                }
            }
        }
        2 => {
            if 3 * g(2) != target {
                return Err(Error::violation(
                    "pair sums for multiplicity e+2",
                    format!("{h}: 3 n_2 != Fr + e + 2 = {target}"),
                ));
            }
            for k in 3..=e {
                if g(k) + g(e + 3 - k) != target {
                    return Err(Error::violation(
                        "pair sums for multiplicity e+2",
                        format!("{h}: n_{k} + n_{} != Fr + e + 2 = {target}", e + 3 - k),
                    ));
                }
            }
        }
        _ => {}
    }
    Ok(ShapeTag {
        multiplicity_offset: offset as usize,
        variant,
        pair_matching,
        j,
    })
}

/// `n_1 ≥ e + ord(J_{H,Fr+n_1}) − 1` for symmetric `H`.
pub fn order_bound_holds(h: &NumericalSemigroup) -> Result<bool> {
    let j = inverse_polynomial(h, h.frobenius() + h.multiplicity())?;
    let s = j.ord() as i64;
    Ok(h.multiplicity() >= h.embedding_dim() as i64 + s - 1)
}
