//! Subcommand implementations. Each returns its text rendering and the JSON
//! value carrying the same numbers.
//!
//! Exponent vectors and polynomials are printed in the order the generators
//! were given when that list is minimal, and in increasing order otherwise.
//! JSON output always lists that order under `"generators"`.

use std::fmt;
use std::ops::ControlFlow;

use invsemi_core::bresinsky::JShapeBranch;
use invsemi_core::inverse_poly::{almost_symmetry, two_term_check};
use invsemi_core::structure::{construct_h_ec, monomial_criterion};
use invsemi_core::{
    alpha_table, annihilator_of_semigroup_j, check_as, ci_same_degree, classify_small_multiplicity,
    denumerant, glue, glued_inverse_poly, inverse_polynomial, is_free, minimal_generators,
    mu_modulo, parse_generators, pfaffian_structure, two_factorization_witness, verify_4gor, Error,
    ExponentVector, FactorizationEngine, GluingSpec, IntersectionMode, IntersectionVerifier,
    Labeling, NumericalSemigroup, SemigroupSummary,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::{Cli, Command};

pub struct Output {
    pub text: String,
    pub json: Value,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_usage() => 2,
            CliError::Core(e) if e.is_fatal() => 3,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// A parsed generator list with the output labeling it induces.
struct Input {
    h: NumericalSemigroup,
    labeling: Labeling,
}

impl Input {
    fn parse(s: &str) -> Result<Self> {
        let raw = parse_generators(s)?;
        let h = NumericalSemigroup::new(&raw)?;
        let labeling = Labeling::for_input(&h, &raw);
        Ok(Input { h, labeling })
    }

    fn generators(&self) -> Vec<i64> {
        self.labeling.generators(&self.h)
    }

    fn exp(&self, a: &ExponentVector) -> Vec<u32> {
        self.labeling.exponent(a).into_coords()
    }
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn to_value<T: serde::Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Info { gens } => info(gens),
        Command::Apery { gens, modulus } => apery(gens, *modulus),
        Command::Factorize { gens, n } => factorize(gens, *n, cli.bound),
        Command::Invpoly { gens, h } => invpoly(gens, *h),
        Command::Ann { gens, m } => ann(gens, *m),
        Command::CheckAs { gens, h } => check_as_cmd(gens, *h),
        Command::VerifyIntersection {
            gens,
            exponent,
            eliminate,
            random,
        } => verify_intersection(gens, exponent.as_deref(), *eliminate, *random, cli),
        Command::Glue {
            h1,
            d1,
            h2,
            d2,
            invpoly,
        } => glue_cmd(h1, *d1, h2, *d2, invpoly.as_deref()),
        Command::Free { gens } => free(gens),
        Command::Hec { e, c } => hec(*e, *c),
        Command::Classify { gens } => classify(gens),
        Command::Ci { gens } => ci(gens),
        Command::Bresinsky { gens } => bresinsky(gens),
        Command::Verify4Gor { gens } => verify_4gor_cmd(gens),
        Command::Mu { gens, modulo } => mu(gens, *modulo),
    }
}

fn info(gens: &str) -> Result<Output> {
    let input = Input::parse(gens)?;
    let summary = SemigroupSummary::new(&input.h, &input.labeling);
    Ok(Output {
        text: summary.to_text(),
        json: to_value(&summary),
    })
}

fn apery(gens: &str, modulus: Option<i64>) -> Result<Output> {
    let input = Input::parse(gens)?;
    let n = modulus.unwrap_or_else(|| input.h.multiplicity());
    let ap = input.h.apery(n)?;
    Ok(Output {
        text: format!("Ap(H, {n}) = {{{}}}", list(&ap.elements)),
        json: json!({ "generators": input.generators(), "modulus": n, "apery": ap.elements }),
    })
}

fn factorize(gens: &str, n: i64, bound: usize) -> Result<Output> {
    let input = Input::parse(gens)?;
    let weights = input.generators();
    let engine = FactorizationEngine::new(&weights)?;
    let mut listed = Vec::new();
    let truncated = engine
        .for_each(n, |a| {
            if listed.len() >= bound {
                return ControlFlow::Break(());
            }
            listed.push(a.to_vec());
            ControlFlow::Continue(())
        })?
        .is_break();
    listed.sort_unstable_by(|a, b| b.cmp(a));
    let count = denumerant(&input.h, n);
    let mut text = format!("{count} factorization(s) of {n}");
    if truncated {
        text.push_str(&format!(" (first {} listed)", listed.len()));
    }
    for a in &listed {
        text.push_str(&format!("\n({})", list(a)));
    }
    Ok(Output {
        text,
        json: json!({
            "generators": weights,
            "n": n,
            "count": count.to_string(),
            "factorizations": listed,
        }),
    })
}

fn invpoly(gens: &str, n: i64) -> Result<Output> {
    let input = Input::parse(gens)?;
    let j = input.labeling.polynomial(&inverse_polynomial(&input.h, n)?);
    Ok(Output {
        text: j.to_string(),
        json: json!({ "generators": input.generators(), "h": n, "j": to_value(&j), "text": j.to_string() }),
    })
}

fn ann(gens: &str, m: i64) -> Result<Output> {
    let input = Input::parse(gens)?;
    let a = annihilator_of_semigroup_j(&input.h, m)?;
    let monomials: Vec<Vec<u32>> = a.monomial_gens.iter().map(|x| input.exp(x)).collect();
    let binomials: Vec<Value> = a
        .binomial_gens
        .iter()
        .map(|b| json!({ "degree": b.degree, "lhs": input.exp(&b.lhs), "rhs": input.exp(&b.rhs) }))
        .collect();
    let mut text = format!(
        "colength: {}\ndegree set: {{{}}}",
        a.colength,
        list(&a.deg_set)
    );
    if let Some(mu) = a.mu {
        text.push_str(&format!("\nminimal generators: {mu}"));
    }
    for x in &monomials {
        text.push_str(&format!("\nmonomial ({})", list(x)));
    }
    for b in &a.binomial_gens {
        text.push_str(&format!(
            "\nbinomial ({}) - ({})",
            list(&input.exp(&b.lhs)),
            list(&input.exp(&b.rhs))
        ));
    }
    Ok(Output {
        text,
        json: json!({
            "generators": input.generators(),
            "m": m,
            "colength": a.colength,
            "degree_set": a.deg_set,
            "mu": a.mu,
            "monomial_generators": monomials,
            "binomial_generators": binomials,
        }),
    })
}

fn check_as_cmd(gens: &str, x: Option<i64>) -> Result<Output> {
    let input = Input::parse(gens)?;
    if let Some(x) = x {
        let c = check_as(&input.h, x)?;
        return Ok(Output {
            text: format!(
                "h = {}: colength {} <= {} ({})",
                c.h,
                c.colength,
                c.bound,
                if c.equality { "equality" } else { "strict" }
            ),
            json: to_value(&c),
        });
    }
    let r = almost_symmetry(&input.h)?;
    let text = format!(
        "almost symmetric: {}\nequality at some h: {}\nequality at every tested h: {}\nwitness: {}\ntested: {{{}}}",
        input.h.is_almost_symmetric(),
        r.some_h_agrees(),
        r.every_h_agrees(),
        r.witness.map_or_else(|| "none".to_string(), |w| w.to_string()),
        list(&r.searched)
    );
    let mut json = to_value(&r);
    json["almost_symmetric"] = input.h.is_almost_symmetric().into();
    Ok(Output { text, json })
}

fn parse_exponent(s: &str, dim: usize) -> Result<Vec<u32>> {
    let coords = s
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("cannot parse exponent vector {s:?}: {e}")))?;
    if coords.len() != dim {
        return Err(CliError::Usage(format!(
            "exponent vector has {} entries, the semigroup has {dim} generators",
            coords.len()
        )));
    }
    Ok(coords)
}

fn verify_intersection(
    gens: &str,
    exponent: Option<&str>,
    eliminate: bool,
    random: Option<usize>,
    cli: &Cli,
) -> Result<Output> {
    let input = Input::parse(gens)?;
    let e = input.h.embedding_dim();
    let labeled: Vec<Vec<u32>> = match (exponent, random) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give an exponent vector or --random, not both".into(),
            ));
        }
        (Some(s), None) => vec![parse_exponent(s, e)?],
        (None, Some(k)) => {
            let mut rng = StdRng::seed_from_u64(cli.seed);
            (0..k.min(cli.bound))
                .map(|_| loop {
                    let v: Vec<u32> = (0..e).map(|_| rng.gen_range(0..=2)).collect();
                    if v.iter().any(|&x| x > 0) {
                        break v;
                    }
                })
                .collect()
        }
        (None, None) => (0..e)
            .map(|i| ExponentVector::unit(e, i).into_coords())
            .collect(),
    };
    let mode = if eliminate {
        IntersectionMode::Elimination
    } else {
        IntersectionMode::Polynomials
    };
    let verifier = IntersectionVerifier::new(&input.h)?;
    let mut lines = Vec::new();
    let mut certs = Vec::new();
    for v in labeled {
        let a = input
            .labeling
            .canonical_exponent(&ExponentVector::new(v.clone()));
        let c = verifier.verify(&a, mode)?;
        lines.push(format!(
            "x^({}) of degree {}: colength {} = {}{}",
            list(&v),
            c.h,
            c.lhs_colength,
            c.rhs_colength_by_degrees,
            c.rhs_colength_by_elimination
                .map_or_else(String::new, |d| format!(" = {d} (elimination)"))
        ));
        certs.push(json!({
            "exponent": v,
            "degree": c.h,
            "lhs_colength": c.lhs_colength,
            "rhs_colength_by_degrees": c.rhs_colength_by_degrees,
            "rhs_colength_by_elimination": c.rhs_colength_by_elimination,
            "annihilation_checks": c.annihilation_checks,
        }));
    }
    Ok(Output {
        text: lines.join("\n"),
        json: json!({ "generators": input.generators(), "certificates": certs }),
    })
}

fn glue_cmd(h1: &str, d1: i64, h2: &str, d2: i64, invpoly: Option<&[i64]>) -> Result<Output> {
    let h1 = NumericalSemigroup::new(&parse_generators(h1)?)?;
    let h2 = NumericalSemigroup::new(&parse_generators(h2)?)?;
    let g = glue(GluingSpec::new(h1, h2, d1, d2)?)?;
    let block = g.spec.block_generators()?;
    let inv = g.semigroup.invariants();
    let mut text = format!(
        "glued: <{}>\nfrobenius: {} (predicted {})\npseudo-frobenius: {{{}}} (predicted {{{}}})\ntype: {} (predicted {})\nsymmetric: {} (predicted {})",
        list(&block),
        inv.frobenius,
        g.predicted.frobenius,
        list(&inv.pseudo_frobenius),
        list(&g.predicted.pseudo_frobenius),
        inv.type_,
        g.predicted.type_,
        inv.is_symmetric,
        g.predicted.is_symmetric,
    );
    let mut json = json!({
        "generators": block,
        "frobenius": inv.frobenius,
        "pf": inv.pseudo_frobenius,
        "type": inv.type_,
        "symmetric": inv.is_symmetric,
        "predicted": to_value(&g.predicted),
    });
    if let Some(&[m1, m2]) = invpoly {
        let j = glued_inverse_poly(&g, m1, m2)?;
        let m = d1 * m1 + d2 * m2;
        text.push_str(&format!("\nJ_{m} = {j} (product formula agrees)"));
        json["invpoly"] =
            json!({ "m1": m1, "m2": m2, "m": m, "j": to_value(&j), "text": j.to_string() });
    }
    Ok(Output { text, json })
}

fn free(gens: &str) -> Result<Output> {
    let input = Input::parse(gens)?;
    let witness = is_free(&input.h)?;
    let mut text = match &witness {
        Some(w) => format!(
            "free: true\nordering: <{}>\ngcd chain: {}\ntelescopic frobenius: {}",
            list(
                &w.ordering
                    .iter()
                    .map(|&c| input.h.generator(c))
                    .collect::<Vec<_>>()
            ),
            list(&w.gcd_chain),
            w.telescopic_frobenius
        ),
        None => "free: false".to_string(),
    };
    let mut json = json!({
        "generators": input.generators(),
        "free": witness.is_some(),
        "witness": witness.as_ref().map(|w| json!({
            "ordering": w.ordering.iter().map(|&c| input.h.generator(c)).collect::<Vec<_>>(),
            "gcd_chain": w.gcd_chain,
            "telescopic_frobenius": w.telescopic_frobenius,
        })),
    });
    if input.h.is_symmetric() {
        let mc = monomial_criterion(&input.h)?;
        let monomial: Vec<i64> = mc
            .monomial_indices
            .iter()
            .map(|&c| input.h.generator(c))
            .collect();
        text.push_str(&format!(
            "\nmonomial J_(Fr+n) for n in: {{{}}}",
            list(&monomial)
        ));
        json["monomial_at"] = monomial.into();
    }
    Ok(Output { text, json })
}

fn hec(e: usize, c: usize) -> Result<Output> {
    let r = construct_h_ec(e, c)?;
    let text = format!(
        "H_{{{e},{c}}} = <{}>\nfrobenius: {} (predicted {})\nJ_(Fr+n_1) = {}\npredicted: {}\nbranch: {:?}",
        list(&r.generators),
        r.frobenius,
        r.predicted_frobenius,
        r.j,
        r.predicted_j,
        r.branch
    );
    let mut json = to_value(&r);
    json["j_text"] = r.j.to_string().into();
    Ok(Output { text, json })
}

fn classify(gens: &str) -> Result<Output> {
    let input = Input::parse(gens)?;
    let tag = classify_small_multiplicity(&input.h)?;
    let sorted = input.h.generators().to_vec();
    let text = format!(
        "variables: <{}>\nn_1 - e: {}\ncase: {}\nJ_(Fr+n_1) = {}",
        list(&sorted),
        tag.multiplicity_offset,
        tag.variant.label(),
        tag.j
    );
    let mut json = to_value(&tag);
    json["generators"] = sorted.into();
    json["j_text"] = tag.j.to_string().into();
    Ok(Output { text, json })
}

fn ci(gens: &str) -> Result<Output> {
    let input = Input::parse(gens)?;
    let alphas = ci_same_degree(&input.h)?;
    let labeled = alphas.map(|a| {
        input
            .labeling
            .perm()
            .iter()
            .map(|&c| a[c])
            .collect::<Vec<_>>()
    });
    let text = match &labeled {
        Some(a) => format!(
            "complete intersection of same-degree binomials: true\nalpha: ({})",
            list(a)
        ),
        None => "complete intersection of same-degree binomials: false".to_string(),
    };
    Ok(Output {
        text,
        json: json!({ "generators": input.generators(), "same_degree_ci": labeled.is_some(), "alpha": labeled }),
    })
}

fn bresinsky(gens: &str) -> Result<Output> {
    let input = Input::parse(gens)?;
    let s = pfaffian_structure(&input.h)?;
    let w = two_factorization_witness(&input.h)?;
    let table = alpha_table(&input.h)?;
    let witness_generator = input.h.generator(w.index);
    let structure_index = s
        .index_permutation
        .iter()
        .position(|&c| c == w.index)
        .expect("a permutation")
        + 1;
    let binomials: Vec<Value> = s
        .generators
        .iter()
        .map(|b| json!({ "degree": b.degree, "lhs": b.lhs.coords(), "rhs": b.rhs.coords() }))
        .collect();
    let mut text = format!(
        "structure order: <{}>\nalpha: ({})\nalpha_off: {}",
        list(&s.ordered_generators),
        list(&s.alpha),
        alpha_off_text(&s.alpha_off)
    );
    for b in &s.generators {
        text.push_str(&format!(
            "\nf (degree {}): ({}) - ({})",
            b.degree,
            list(b.lhs.coords()),
            list(b.rhs.coords())
        ));
    }
    text.push_str(&format!(
        "\nwitness: n_{structure_index} = {witness_generator} (two factorizations of Fr + {witness_generator})"
    ));
    text.push_str(&format!(
        "\nalpha products distinct: {}",
        table
            .products_distinct
            .map_or_else(|| "n/a".to_string(), |b| b.to_string())
    ));
    Ok(Output {
        text,
        json: json!({
            "ordered_generators": s.ordered_generators,
            "alpha": s.alpha,
            "alpha_off": to_value(&s.alpha_off),
            "generators": binomials,
            "witness_index": structure_index,
            "witness_generator": witness_generator,
            "matches_computed_generators": s.matches_computed_generators,
        }),
    })
}

fn alpha_off_text(a: &invsemi_core::bresinsky::AlphaOff) -> String {
    format!(
        "a21={} a31={} a32={} a42={} a13={} a43={} a24={} a14={}",
        a.a21, a.a31, a.a32, a.a42, a.a13, a.a43, a.a24, a.a14
    )
}

fn verify_4gor_cmd(gens: &str) -> Result<Output> {
    let input = Input::parse(gens)?;
    let c = verify_4gor(&input.h)?;
    let series = c
        .labelings
        .iter()
        .filter(|l| l.branch == JShapeBranch::Series)
        .count();
    let mut text = format!(
        "structure order: <{}>\nfrobenius: {}\nmu: {}\nlabelings checked: {} ({} two-term, {} series)\nno unique factorization conditions hold: {}\nwitnesses: {{{}}}\nmu of I_H + (x_i) at the witness: {}",
        list(&c.structure.ordered_generators),
        c.frobenius,
        c.mu,
        c.labelings.len(),
        c.labelings.len() - series,
        series,
        c.nuf.all_hold(),
        list(&c.witnesses.iter().map(|w| input.h.generator(w.index)).collect::<Vec<_>>()),
        c.witness_mu_mod_xi
    );
    if let Some(t) = &c.witness_two_term {
        text.push_str(&format!(
            "\ntwo-term J at the witness: s = {}, mu = {}",
            t.s, t.mu_mod_xi
        ));
    }
    text.push_str("\nall checks passed");
    let mut json = to_value(&c);
    json["generators"] = input.generators().into();
    json["passed"] = true.into();
    Ok(Output { text, json })
}

fn mu(gens: &str, modulo: Option<usize>) -> Result<Output> {
    let input = Input::parse(gens)?;
    match modulo {
        None => {
            let p = minimal_generators(&input.h)?;
            let mut text = format!(
                "mu: {}\nbetti degrees: {{{}}}",
                p.mu,
                list(&p.betti_degrees)
            );
            let binomials: Vec<Value> = p
                .generators
                .iter()
                .map(|b| {
                    text.push_str(&format!(
                        "\n({}) - ({}) degree {}",
                        list(&input.exp(&b.lhs)),
                        list(&input.exp(&b.rhs)),
                        b.degree
                    ));
                    json!({ "degree": b.degree, "lhs": input.exp(&b.lhs), "rhs": input.exp(&b.rhs) })
                })
                .collect();
            Ok(Output {
                text,
                json: json!({
                    "generators": input.generators(),
                    "mu": p.mu,
                    "betti_degrees": p.betti_degrees,
                    "binomials": binomials,
                }),
            })
        }
        Some(i) => {
            let e = input.h.embedding_dim();
            if i == 0 || i > e {
                return Err(CliError::Usage(format!(
                    "--modulo takes an index in 1..={e}"
                )));
            }
            let c = input.labeling.perm()[i - 1];
            let mu = mu_modulo(&input.h, c)?;
            let two_term = two_term_check(&input.h, c)?;
            let mut text = format!("mu of I_H + (x_{i}): {mu}");
            if let Some(t) = &two_term {
                text.push_str(&format!("\nJ_(Fr+n_{i}) has two terms, s = {}", t.s));
            }
            Ok(Output {
                text,
                json: json!({
                    "generators": input.generators(),
                    "index": i,
                    "mu": mu,
                    "two_term": two_term.map(|t| to_value(&t)),
                }),
            })
        }
    }
}
