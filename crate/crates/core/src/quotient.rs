//! Colength and minimal generator counts of Artinian ideals generated by
//! monomials and pure binomials `x^u − x^v`.
//!
//! Modulo the monomial part the quotient has the standard monomials as a
//! basis, and every multiple `x^c(x^u − x^v)` reduces either to a difference
//! of two basis vectors, to a single basis vector, or to zero. The span of
//! such vectors has rank `V − (components containing no lone basis vector)`.

use std::collections::HashMap;

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::exponent::ExponentVector;

/// Monomials outside the ideal generated by `monomials`.
///
/// The ideal must contain a pure power of every variable.
pub fn staircase(dim: usize, monomials: &[ExponentVector]) -> Result<Vec<ExponentVector>> {
    let mut bound = vec![u32::MAX; dim];
    for m in monomials {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.dim(),
            });
        }
        let support: Vec<usize> = m.support().collect();
        if support.is_empty() {
            return Ok(Vec::new());
        }
        if let [i] = support[..] {
            bound[i] = bound[i].min(m.get(i));
        }
    }
    if bound.contains(&u32::MAX) {
        return Err(Error::NotApplicable("monomial part is not Artinian"));
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; dim];
    loop {
        let v = ExponentVector::new(cur.clone());
        if !monomials.iter().any(|m| m.divides(&v)) {
            out.push(v);
        }
        // Odometer over the box ∏ [0, bound_i).
        let mut k = dim;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < bound[k] {
                break;
            }
            cur[k] = 0;
        }
    }
}

/// `dim_k S/(monomials + binomials)`; each binomial `(u, v)` stands for
/// `x^u − x^v`.
pub fn colength(
    dim: usize,
    monomials: &[ExponentVector],
    binomials: &[(ExponentVector, ExponentVector)],
) -> Result<usize> {
    let basis = staircase(dim, monomials)?;
    let index: HashMap<&ExponentVector, usize> =
        basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut dsu = Dsu::new(basis.len());
    let mut killed = vec![false; basis.len()];
    for (u, v) in binomials {
        for (w_idx, w) in basis.iter().enumerate() {
            for (from, to) in [(u, v), (v, u)] {
                let Some(c) = from.cofactor_in(w) else {
                    continue;
                };
                match index.get(&c.add(to)) {
                    Some(&other) => {
                        dsu.union(w_idx, other);
                    }
                    None => killed[w_idx] = true,
                }
            }
        }
    }
    let mut root_killed = vec![false; basis.len()];
    for (i, &k) in killed.iter().enumerate().take(basis.len()) {
        if k {
            let r = dsu.find(i);
            root_killed[r] = true;
        }
    }
    Ok((0..basis.len())
        .filter(|&i| dsu.find(i) == i && !root_killed[i])
        .count())
}

/// `μ(I) = dim_k I/mI` for `I` homogeneous under some positive grading.
pub fn minimal_generator_count(
    dim: usize,
    monomials: &[ExponentVector],
    binomials: &[(ExponentVector, ExponentVector)],
) -> Result<usize> {
    let mut m_monos = Vec::new();
    let mut m_binos = Vec::new();
    for j in 0..dim {
        let xj = ExponentVector::unit(dim, j);
        m_monos.extend(monomials.iter().map(|m| m.add(&xj)));
        m_binos.extend(binomials.iter().map(|(u, v)| (u.add(&xj), v.add(&xj))));
    }
    Ok(colength(dim, &m_monos, &m_binos)? - colength(dim, monomials, binomials)?)
}
