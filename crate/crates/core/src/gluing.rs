//! Gluing `⟨d_1H_1, d_2H_2⟩` of two numerical semigroups and the extension
//! `⟨dH_1, m⟩`.
//!
//! Glued exponent vectors use block coordinates: the variables of `H_1`
//! first, in the canonical order of `H_1`, then those of `H_2`. The glued
//! [`NumericalSemigroup`] sorts its generators, and [`Gluing::block_perm`]
//! converts between the two orders.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inverse_poly::inverse_polynomial;
use crate::polynomial::InversePolynomial;
use crate::semigroup::NumericalSemigroup;

/// Data of a gluing. Construct with [`GluingSpec::new`], which validates.
#[derive(Debug, Clone)]
pub struct GluingSpec {
    h1: NumericalSemigroup,
    h2: NumericalSemigroup,
    d1: i64,
    d2: i64,
}

impl GluingSpec {
    /// Requires `gcd(d_1, d_2) = 1`, `d_1 ∈ H_2`, `d_2 ∈ H_1`, and that the
    /// scaled generators `d_1·gens(H_1) ∪ d_2·gens(H_2)` are exactly the
    /// minimal generators of the result.
    pub fn new(h1: NumericalSemigroup, h2: NumericalSemigroup, d1: i64, d2: i64) -> Result<Self> {
        if d1 <= 0 || d2 <= 0 {
            return Err(Error::InvalidParameter(format!(
                "gluing factors must be positive, got {d1} and {d2}"
            )));
        }
        if num_integer::gcd(d1, d2) != 1 {
            return Err(Error::NotCoprime(d1, d2));
        }
        if !h2.contains(d1) {
            return Err(Error::NotMember {
                factor: d1,
                semigroup: h2.to_string(),
            });
        }
        if !h1.contains(d2) {
            return Err(Error::NotMember {
                factor: d2,
                semigroup: h1.to_string(),
            });
        }
        let spec = GluingSpec { h1, h2, d1, d2 };
        let order = spec.block_generators()?;
        let glued = NumericalSemigroup::new(&order)?;
        if glued.embedding_dim() != order.len() {
            let redundant: Vec<String> = order
                .iter()
                .filter(|g| !glued.generators().contains(g))
                .map(|g| g.to_string())
                .collect();
            return Err(Error::NotMinimalGlue(format!(
                "{} not minimal in {glued}",
                redundant.join(", ")
            )));
        }
        Ok(spec)
    }

    pub fn h1(&self) -> &NumericalSemigroup {
        &self.h1
    }

    pub fn h2(&self) -> &NumericalSemigroup {
        &self.h2
    }

    pub fn d1(&self) -> i64 {
        self.d1
    }

    pub fn d2(&self) -> i64 {
        self.d2
    }

    /// `d_1·gens(H_1)` followed by `d_2·gens(H_2)`.
    pub fn block_generators(&self) -> Result<Vec<i64>> {
        let scale = |d: i64, h: &NumericalSemigroup| {
            h.generators()
                .iter()
                .map(|&g| g.checked_mul(d).ok_or(Error::Overflow))
                .collect::<Result<Vec<_>>>()
        };
        let mut out = scale(self.d1, &self.h1)?;
        out.extend(scale(self.d2, &self.h2)?);
        Ok(out)
    }
}

/// Invariants of a gluing predicted from those of its parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedInvariants {
    pub frobenius: i64,
    pub pseudo_frobenius: Vec<i64>,
    #[serde(rename = "type")]
    pub type_: usize,
    pub is_symmetric: bool,
}

/// A validated gluing together with its semigroup.
#[derive(Debug, Clone)]
pub struct Gluing {
    pub spec: GluingSpec,
    pub semigroup: NumericalSemigroup,
    pub predicted: PredictedInvariants,
    /// `block_generators()[k] == semigroup.generators()[block_perm[k]]`.
    pub block_perm: Vec<usize>,
}

/// Builds `⟨d_1H_1, d_2H_2⟩` and checks the predicted type, PF set, Frobenius
/// number and symmetry against direct computation.
pub fn glue(spec: GluingSpec) -> Result<Gluing> {
    let (d1, d2) = (spec.d1, spec.d2);
    let order = spec.block_generators()?;
    let semigroup = NumericalSemigroup::new(&order)?;
    let block_perm = semigroup.labeling(&order)?;
    let mut pf: Vec<i64> = Vec::new();
    for &f1 in spec.h1.pseudo_frobenius() {
        for &f2 in spec.h2.pseudo_frobenius() {
            pf.push(d1 * f1 + d2 * f2 + d1 * d2);
        }
    }
    pf.sort_unstable();
    let predicted = PredictedInvariants {
        frobenius: d1 * spec.h1.frobenius() + d2 * spec.h2.frobenius() + d1 * d2,
        type_: spec.h1.type_() * spec.h2.type_(),
        is_symmetric: spec.h1.is_symmetric() && spec.h2.is_symmetric(),
        pseudo_frobenius: pf,
    };
    let direct = PredictedInvariants {
        frobenius: semigroup.frobenius(),
        pseudo_frobenius: semigroup.pseudo_frobenius().to_vec(),
        type_: semigroup.type_(),
        is_symmetric: semigroup.is_symmetric(),
    };
    if predicted != direct {
        return Err(Error::violation(
            "gluing invariants",
            format!("{semigroup}: predicted {predicted:?}, computed {direct:?}"),
        ));
    }
    Ok(Gluing {
        spec,
        semigroup,
        predicted,
        block_perm,
    })
}

impl Gluing {
    /// `J_{H,m}` computed directly, in block coordinates.
    pub fn inverse_polynomial(&self, m: i64) -> Result<InversePolynomial> {
        Ok(inverse_polynomial(&self.semigroup, m)?.permuted(&self.block_perm))
    }

    /// `Σ_d J_{H_1, m_1 + d·d_2} · J_{H_2, m_2 − d·d_1}` for
    /// `d ∈ [−⌊m_1/d_2⌋, ⌊m_2/d_1⌋]`, in block coordinates.
    pub fn product_formula(&self, m1: i64, m2: i64) -> Result<InversePolynomial> {
        let s = &self.spec;
        if !s.h1.contains(m1) {
            return Err(Error::NotInSemigroup(m1));
        }
        if !s.h2.contains(m2) {
            return Err(Error::NotInSemigroup(m2));
        }
        let e = self.semigroup.embedding_dim();
        let mut sum = InversePolynomial::zero(e);
        for d in -(m1 / s.d2)..=(m2 / s.d1) {
            let j1 = inverse_polynomial(&s.h1, m1 + d * s.d2)?;
            let j2 = inverse_polynomial(&s.h2, m2 - d * s.d1)?;
            if j1.is_zero() || j2.is_zero() {
                continue;
            }
            sum = sum.add(&j1.block_product(&j2))?;
        }
        Ok(sum.with_degree(Some(s.d1 * m1 + s.d2 * m2)))
    }
}

/// The product formula for `m = d_1m_1 + d_2m_2`, checked term by term
/// against `J_{H,m}` of the glued semigroup. Block coordinates.
pub fn glued_inverse_poly(g: &Gluing, m1: i64, m2: i64) -> Result<InversePolynomial> {
    let formula = g.product_formula(m1, m2)?;
    let direct = g.inverse_polynomial(g.spec.d1 * m1 + g.spec.d2 * m2)?;
    if formula != direct {
        return Err(Error::violation(
            "gluing product formula",
            format!(
                "{} at ({m1}, {m2}): formula {formula}, direct {direct}",
                g.semigroup
            ),
        ));
    }
    Ok(formula)
}

/// Which Apéry set `h` is drawn from in [`glued_monomial_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlueSide {
    /// `h ∈ Ap(H_1, d_2)`, degree `f + d_1h`.
    First,
    /// `h ∈ Ap(H_2, d_1)`, degree `f + d_2h`.
    Second,
}

/// `J_{H, f + d_1h} = J_{H_1, f_1 + h} · J_{H_2, f_2 + d_1}` (or the mirror).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluedMonomialCertificate {
    pub f: i64,
    pub degree: i64,
    pub j: InversePolynomial,
    pub left_factor: InversePolynomial,
    pub right_factor: InversePolynomial,
    /// For `H_2 = ⟨1⟩` and [`GlueSide::First`]: `J_{H,f+d_1h}` is a monomial
    /// exactly when `J_{H_1,f_1+h}` is.
    pub monomial_equivalence: Option<bool>,
}

pub fn glued_monomial_check(
    g: &Gluing,
    f1: i64,
    f2: i64,
    h: i64,
    side: GlueSide,
) -> Result<GluedMonomialCertificate> {
    let s = &g.spec;
    if !s.h1.pseudo_frobenius().contains(&f1) {
        return Err(Error::NotPseudoFrobenius(f1));
    }
    if !s.h2.pseudo_frobenius().contains(&f2) {
        return Err(Error::NotPseudoFrobenius(f2));
    }
    let f = s.d1 * f1 + s.d2 * f2 + s.d1 * s.d2;
    let (degree, left, right) = match side {
        GlueSide::First => {
            if !in_apery(&s.h1, h, s.d2) {
                return Err(Error::NotInApery(h));
            }
            (f + s.d1 * h, (f1 + h), (f2 + s.d1))
        }
        GlueSide::Second => {
            if !in_apery(&s.h2, h, s.d1) {
                return Err(Error::NotInApery(h));
            }
            (f + s.d2 * h, (f1 + s.d2), (f2 + h))
        }
    };
    let left_factor = inverse_polynomial(&s.h1, left)?;
    let right_factor = inverse_polynomial(&s.h2, right)?;
    let j = g.inverse_polynomial(degree)?;
    let product = left_factor.block_product(&right_factor);
    if j != product {
        return Err(Error::violation(
            "glued inverse polynomial factorization",
            format!(
                "{}: J_{degree} = {j}, but J_{left} * J_{right} = {product}",
                g.semigroup
            ),
        ));
    }
    let monomial_equivalence = if s.h2.generators() == [1] && side == GlueSide::First {
        let expected = InversePolynomial::monomial(crate::ExponentVector::new(vec![
            u32::try_from(s.d1 - 1).map_err(|_| Error::Overflow)?,
        ]));
        if right_factor != expected {
            return Err(Error::violation(
                "glued inverse polynomial factorization",
                format!("J_(<1>, {right}) = {right_factor}, expected {expected}"),
            ));
        }
        let eq = j.is_monomial() == left_factor.is_monomial();
        if !eq {
            return Err(Error::violation(
                "glued monomial equivalence",
                format!(
                    "{}: J_{degree} = {j}, J_{left} = {left_factor}",
                    g.semigroup
                ),
            ));
        }
        Some(eq)
    } else {
        None
    };
    Ok(GluedMonomialCertificate {
        f,
        degree,
        j,
        left_factor,
        right_factor,
        monomial_equivalence,
    })
}

fn in_apery(h: &NumericalSemigroup, x: i64, modulus: i64) -> bool {
    h.contains(x) && !h.contains(x - modulus)
}

/// Outcome of [`symmetric_extension_test`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymmetricExtension {
    /// Generators of `⟨dH_1, m⟩`.
    pub generators: Vec<i64>,
    /// Generators of `⟨H_1, m⟩`.
    pub companion: Vec<i64>,
    pub is_symmetric: bool,
    /// `d·Fr(H') + (d − 1)m` when `H'` is symmetric.
    pub predicted_pf: Option<i64>,
    /// `(d − 1)m + d·f` for each `f ∈ PF(H')`; all of them lie in `PF(H)`.
    pub predicted_members: Vec<i64>,
}

/// Symmetry of `H = ⟨dH_1, m⟩` decided through `H' = ⟨H_1, m⟩`, with the
/// predicted pseudo-Frobenius numbers checked against `H` directly.
pub fn symmetric_extension_test(
    h1: &NumericalSemigroup,
    d: i64,
    m: i64,
) -> Result<SymmetricExtension> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!(
            "d = {d} must be at least 2"
        )));
    }
    if m <= 0 {
        return Err(Error::InvalidParameter(format!("m = {m} must be positive")));
    }
    if num_integer::gcd(d, m) != 1 {
        return Err(Error::NotCoprime(d, m));
    }
    if h1.contains(m) {
        return Err(Error::MemberAlready(m));
    }
    let mut order: Vec<i64> = h1
        .generators()
        .iter()
        .map(|&g| g.checked_mul(d).ok_or(Error::Overflow))
        .collect::<Result<_>>()?;
    order.push(m);
    let h = NumericalSemigroup::new(&order)?;
    if h.embedding_dim() != order.len() {
        return Err(Error::NotMinimalGlue(format!(
            "{h} is not minimally generated by d*gens(H_1) and {m}"
        )));
    }
    let mut companion_gens = h1.generators().to_vec();
    companion_gens.push(m);
    let companion = NumericalSemigroup::new(&companion_gens)?;
    let predicted_members: Vec<i64> = companion
        .pseudo_frobenius()
        .iter()
        .map(|&f| (d - 1) * m + d * f)
        .collect();
    for &p in &predicted_members {
        if !h.pseudo_frobenius().contains(&p) {
            return Err(Error::violation(
                "symmetric extension",
                format!("{p} predicted in PF({h}) = {:?}", h.pseudo_frobenius()),
            ));
        }
    }
    let predicted_pf = companion
        .is_symmetric()
        .then(|| d * companion.frobenius() + (d - 1) * m);
    if h.is_symmetric() != companion.is_symmetric() {
        return Err(Error::violation(
            "symmetric extension",
            format!(
                "{h} symmetric = {}, {companion} symmetric = {}",
                h.is_symmetric(),
                companion.is_symmetric()
            ),
        ));
    }
    if let Some(p) = predicted_pf {
        if p != h.frobenius() {
            return Err(Error::violation(
                "symmetric extension",
                format!("Fr({h}) = {}, predicted {p}", h.frobenius()),
            ));
        }
    }
    Ok(SymmetricExtension {
        generators: h.generators().to_vec(),
        companion: companion.generators().to_vec(),
        is_symmetric: h.is_symmetric(),
        predicted_pf,
        predicted_members,
    })
}
