//! Inverse polynomials in `E = k[X_1, …, X_e]`, ordinary polynomials of `S`,
//! and the contraction action `x^a · X^b = X^{b−a}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exponent::ExponentVector;

/// A finite integer combination of inverse monomials `X^a`.
///
/// Equality compares terms only; the cached homogeneous degree is metadata.
#[derive(Clone, Eq)]
pub struct InversePolynomial {
    dim: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
    homogeneous_degree: Option<i64>,
}

impl PartialEq for InversePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl InversePolynomial {
    pub fn zero(dim: usize) -> Self {
        InversePolynomial {
            dim,
            terms: BTreeMap::new(),
            homogeneous_degree: None,
        }
    }

    /// The constant `X^0`.
    pub fn one(dim: usize) -> Self {
        Self::monomial(ExponentVector::zero(dim))
    }

    pub fn monomial(a: ExponentVector) -> Self {
        let dim = a.dim();
        let mut terms = BTreeMap::new();
        terms.insert(a, BigInt::one());
        InversePolynomial {
            dim,
            terms,
            homogeneous_degree: None,
        }
    }

    /// Sums the given terms, dropping cancelled ones.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut p = InversePolynomial::zero(dim);
        for (a, c) in terms {
            if a.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: a.dim(),
                });
            }
            p.add_term(a, c);
        }
        Ok(p)
    }

    /// Sum of `X^a` over the given exponent vectors, each with coefficient 1.
    pub fn sum_of(dim: usize, exps: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        Self::from_terms(dim, exps.into_iter().map(|a| (a, BigInt::one())))
    }

    pub(crate) fn add_term(&mut self, a: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(a);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn with_degree(mut self, degree: Option<i64>) -> Self {
        self.homogeneous_degree = degree;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigInt> {
        &self.terms
    }

    pub fn exponents(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, a: &ExponentVector) -> BigInt {
        self.terms.get(a).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The common degree of all terms when known (set for `J_{H,h}`).
    pub fn homogeneous_degree(&self) -> Option<i64> {
        self.homogeneous_degree
    }

    /// The common weighted degree of all terms, if there is one.
    pub fn degree_under(&self, weights: &[i64]) -> Option<i64> {
        let mut degs = self.terms.keys().map(|a| a.degree(weights));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// `ord J = max ord(a)`.
    pub fn ord(&self) -> u64 {
        self.terms.keys().map(|a| a.ord()).max().unwrap_or(0)
    }

    /// Rewrites coordinates; see [`ExponentVector::permuted`].
    pub fn permuted(&self, perm: &[usize]) -> Self {
        InversePolynomial {
            dim: perm.len(),
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.permuted(perm), c.clone()))
                .collect(),
            homogeneous_degree: self.homogeneous_degree,
        }
    }

    /// Product of inverse polynomials in disjoint variable blocks: the
    /// variables of `self` come first.
    pub fn block_product(&self, other: &InversePolynomial) -> Self {
        let mut p = InversePolynomial::zero(self.dim + other.dim);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                p.add_term(a.concat(b), c * d);
            }
        }
        p
    }

    /// Product in `E` as a polynomial ring in the `X_i`.
    pub fn mul(&self, other: &InversePolynomial) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut p = InversePolynomial::zero(self.dim);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                p.add_term(a.add(b), c * d);
            }
        }
        Ok(p)
    }

    pub fn add(&self, other: &InversePolynomial) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut p = self.clone().with_degree(None);
        for (a, c) in &other.terms {
            p.add_term(a.clone(), c.clone());
        }
        Ok(p)
    }

    /// `x^a · self`.
    pub fn contract(&self, a: &ExponentVector) -> Self {
        let mut p = InversePolynomial::zero(self.dim);
        for (b, c) in &self.terms {
            if let Some(rest) = a.cofactor_in(b) {
                p.terms.insert(rest, c.clone());
            }
        }
        p
    }
}

/// A polynomial of `S = k[x_1, …, x_e]` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl Polynomial {
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, ExponentVector)>,
    {
        let inv = InversePolynomial::from_terms(dim, terms.into_iter().map(|(c, a)| (a, c)))?;
        Ok(Polynomial {
            dim,
            terms: inv.terms,
        })
    }

    pub fn monomial(a: ExponentVector) -> Self {
        let dim = a.dim();
        Polynomial {
            dim,
            terms: BTreeMap::from([(a, BigInt::one())]),
        }
    }

    /// `x^u − x^v`.
    pub fn binomial(u: &ExponentVector, v: &ExponentVector) -> Result<Self> {
        Self::from_terms(
            u.dim(),
            [(BigInt::one(), u.clone()), (-BigInt::one(), v.clone())],
        )
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(ExponentVector::zero(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Self> {
        let a = InversePolynomial {
            dim: self.dim,
            terms: self.terms.clone(),
            homogeneous_degree: None,
        };
        let b = InversePolynomial {
            dim: other.dim,
            terms: other.terms.clone(),
            homogeneous_degree: None,
        };
        Ok(Polynomial {
            dim: self.dim,
            terms: a.mul(&b)?.terms,
        })
    }

    /// The bilinear extension of `x^a · X^b = X^{b−a}` (zero unless `a ≤ b`).
    pub fn apply(&self, j: &InversePolynomial) -> Result<InversePolynomial> {
        if self.dim != j.dim {
            return Err(Error::DimensionMismatch {
                expected: j.dim,
                found: self.dim,
            });
        }
        let mut out = InversePolynomial::zero(j.dim);
        for (a, c) in &self.terms {
            for (b, d) in &j.terms {
                if let Some(rest) = a.cofactor_in(b) {
                    out.add_term(rest, c * d);
                }
            }
        }
        Ok(out)
    }
}

/// `p · J`; see [`Polynomial::apply`].
pub fn apply(p: &Polynomial, j: &InversePolynomial) -> Result<InversePolynomial> {
    p.apply(j)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, a: &ExponentVector, var: char) -> fmt::Result {
    let mut first = true;
    for (i, &k) in a.coords().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{var}{}", i + 1)?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    if first {
        write!(f, "1")?;
    }
    Ok(())
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<ExponentVector, BigInt>,
    var: char,
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (idx, (a, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        match (idx, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let mag = c.abs();
        if a.is_zero() {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write_monomial(f, a, var)?;
        }
    }
    Ok(())
}

/// Standard notation, terms in lex-descending order: `X2^10*X3 + X4^20`.
impl fmt::Display for InversePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, 'X')
    }
}

impl fmt::Debug for InversePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, 'x')
    }
}

/// Parses `Xi^k` factors joined by `*` and terms joined by `+`/`-`, with an
/// optional leading integer coefficient per term. Variable letters are
/// case-insensitive so polynomials of `S` parse with the same syntax.
pub fn parse_terms(s: &str, dim: Option<usize>) -> Result<(usize, Vec<(ExponentVector, BigInt)>)> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut raw_terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in cleaned.char_indices() {
        if (ch == '+' || ch == '-') && !(i > 0 && cleaned[..i].ends_with('^')) {
            if !cur.is_empty() {
                raw_terms.push((neg, std::mem::take(&mut cur)));
            } else if i > 0 {
                return Err(Error::Parse(format!("dangling sign in '{s}'")));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("dangling sign in '{s}'")));
    }
    raw_terms.push((neg, cur));

    let mut parsed: Vec<(BTreeMap<usize, u32>, BigInt)> = Vec::new();
    let mut max_var = 0usize;
    for (neg, body) in raw_terms {
        let mut coeff = BigInt::one();
        let mut powers: BTreeMap<usize, u32> = BTreeMap::new();
        for factor in body.split('*') {
            let bad = || Error::Parse(format!("cannot parse factor '{factor}'"));
            if let Some(rest) = factor.strip_prefix(['X', 'x']) {
                let (idx, pow) = match rest.split_once('^') {
                    Some((i, p)) => (i, p.parse::<u32>().map_err(|_| bad())?),
                    None => (rest, 1),
                };
                let idx: usize = idx.parse().map_err(|_| bad())?;
                if idx == 0 {
                    return Err(bad());
                }
                max_var = max_var.max(idx);
                *powers.entry(idx - 1).or_insert(0) += pow;
            } else {
                let c: BigInt = factor.parse().map_err(|_| bad())?;
                coeff *= c;
            }
        }
        if neg {
            coeff = -coeff;
        }
        parsed.push((powers, coeff));
    }
    let dim = match dim {
        Some(d) if d < max_var => {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: max_var,
            })
        }
        Some(d) => d,
        None => max_var,
    };
    let terms = parsed
        .into_iter()
        .map(|(powers, c)| {
            let mut v = vec![0u32; dim];
            for (i, p) in powers {
                v[i] = p;
            }
            (ExponentVector::new(v), c)
        })
        .collect();
    Ok((dim, terms))
}

impl InversePolynomial {
    /// Parses with a fixed number of variables.
    pub fn parse_with_dim(s: &str, dim: usize) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(InversePolynomial::zero(dim));
        }
        let (dim, terms) = parse_terms(s, Some(dim))?;
        Self::from_terms(dim, terms)
    }
}

/// The number of variables is the largest index that occurs.
impl FromStr for InversePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(InversePolynomial::zero(0));
        }
        let (dim, terms) = parse_terms(s, None)?;
        Self::from_terms(dim, terms)
    }
}

impl Polynomial {
    pub fn parse_with_dim(s: &str, dim: usize) -> Result<Self> {
        let (dim, terms) = parse_terms(s, Some(dim))?;
        Self::from_terms(dim, terms.into_iter().map(|(a, c)| (c, a)))
    }
}

/// JSON coefficient: a number when it fits in `i64`, a decimal string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonCoeff {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: JsonCoeff,
    exp: Vec<u32>,
}

/// Serialized as `[{"coeff": c, "exp": [..]}, ..]` in lex-descending order.
impl Serialize for InversePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .rev()
            .map(|(a, c)| JsonTerm {
                coeff: match c.to_i64() {
                    Some(x) => JsonCoeff::Small(x),
                    None => JsonCoeff::Big(c.to_string()),
                },
                exp: a.coords().to_vec(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for InversePolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<JsonTerm>::deserialize(deserializer)?;
        let dim = terms.first().map_or(0, |t| t.exp.len());
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let c = match t.coeff {
                JsonCoeff::Small(x) => BigInt::from(x),
                JsonCoeff::Big(s) => s.parse().map_err(D::Error::custom)?,
            };
            out.push((ExponentVector::new(t.exp), c));
        }
        InversePolynomial::from_terms(dim, out).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn display_is_lex_descending() {
        let j = InversePolynomial::sum_of(4, [ev(&[0, 0, 0, 20]), ev(&[0, 10, 1, 0])]).unwrap();
        assert_eq!(j.to_string(), "X2^10*X3 + X4^20");
        assert_eq!(InversePolynomial::one(3).to_string(), "1");
        assert_eq!(InversePolynomial::zero(3).to_string(), "0");
        let p = Polynomial::binomial(&ev(&[0, 0, 3, 0]), &ev(&[0, 2, 0, 1])).unwrap();
        assert_eq!(p.to_string(), "-x2^2*x4 + x3^3");
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "X2^10*X3 + X4^20",
            "X1*X2",
            "-X1^2 + 3*X3",
            "1",
            "X1^3 + X3^2",
        ] {
            let j: InversePolynomial = s.parse().unwrap();
            assert_eq!(j.to_string(), s);
        }
        let j = InversePolynomial::parse_with_dim("X1", 3).unwrap();
        assert_eq!(j.dim(), 3);
        assert!(InversePolynomial::parse_with_dim("X4", 3).is_err());
        assert!("X1 +".parse::<InversePolynomial>().is_err());
        assert!("Y1".parse::<InversePolynomial>().is_err());
        assert!("X₁^2 + X2".parse::<InversePolynomial>().is_err());
        assert!("é-X1".parse::<InversePolynomial>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let j: InversePolynomial = "X2^10*X3 - 7*X4^20".parse().unwrap();
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(
            s,
            r#"[{"coeff":1,"exp":[0,10,1,0]},{"coeff":-7,"exp":[0,0,0,20]}]"#
        );
        let back: InversePolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, j);
        let big = InversePolynomial::from_terms(
            1,
            [(ev(&[1]), BigInt::from(u64::MAX) * BigInt::from(3))],
        )
        .unwrap();
        let back: InversePolynomial =
            serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn contraction_action() {
        // A homogeneous binomial that does not annihilate J.
        let j: InversePolynomial = "X2^13 + X3^11 + X2*X3*X4^7".parse().unwrap();
        let p = Polynomial::parse_with_dim("x3^3 - x2^2*x4", 4).unwrap();
        assert_eq!(apply(&p, &j).unwrap().to_string(), "X3^8");
        assert_eq!(apply(&Polynomial::one(4), &j).unwrap(), j);
        let wrong = Polynomial::one(3);
        assert!(matches!(
            apply(&wrong, &j),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn exact_cancellation() {
        let j: InversePolynomial = "X1*X2 + X1*X3".parse().unwrap();
        let p = Polynomial::parse_with_dim("x2 - x3", 3).unwrap();
        assert!(p.apply(&j).unwrap().is_zero());
    }
}
