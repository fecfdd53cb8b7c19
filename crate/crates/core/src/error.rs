use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
///
/// Errors fall in three families: malformed input ([`Error::is_usage`]),
/// well-formed input outside an operation's domain, and theorem
/// inconsistencies ([`Error::is_fatal`]). The last family must never occur;
/// when it does the computation is reported rather than patched up.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyInput,
    #[error("generator {0} is not a positive integer")]
    NonPositiveGenerator(i64),
    #[error("cannot parse generator list: {0}")]
    Parse(String),
    #[error("generators have gcd {0}; the complement would be infinite")]
    GcdNotOne(i64),
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(i64),
    #[error("the modulus must be a positive element")]
    ZeroModulus,
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero inverse polynomial has no annihilator of finite colength")]
    ZeroPolynomial,
    #[error("the exponent vector has degree zero")]
    DegreeZero,
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("gluing factor {factor} is not an element of {semigroup}")]
    NotMember { factor: i64, semigroup: String },
    #[error("scaled generators do not form a minimal generating system: {0}")]
    NotMinimalGlue(String),
    #[error("{0} is not in the required Apery set")]
    NotInApery(i64),
    #[error("{0} is not a pseudo-Frobenius number")]
    NotPseudoFrobenius(i64),
    #[error("{0} already lies in the semigroup")]
    MemberAlready(i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the semigroup is not symmetric")]
    NotSymmetric,
    #[error("e = {e} and c = {c} are both odd")]
    BothOdd { e: usize, c: usize },
    #[error("multiplicity {multiplicity} is outside e+1..=e+3 for e = {e}")]
    MultiplicityOutOfRange { multiplicity: i64, e: usize },
    #[error("the alphas are not pairwise coprime")]
    NotCoprimeAlphas,
    #[error("every alpha must exceed 1")]
    AlphaTooSmall,
    #[error("expected 4 minimal generators, found {0}")]
    NotFourGenerated(usize),
    #[error("the defining ideal is a complete intersection")]
    IsCompleteIntersection,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("no shape in the classification matches {0}")]
    NoShapeMatch(String),
    #[error("no Pfaffian structure found for {0}")]
    StructureNotFound(String),
    #[error("no generator index with exactly two factorizations for {0}")]
    NoWitness(String),
    #[error("theorem violation ({claim}): {detail}")]
    TheoremViolation { claim: &'static str, detail: String },
}

impl Error {
    pub(crate) fn violation(claim: &'static str, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            claim,
            detail: detail.into(),
        }
    }

    /// Malformed input, as opposed to valid input outside a domain.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::EmptyInput | Error::NonPositiveGenerator(_) | Error::Parse(_)
        )
    }

    /// A computed object contradicts a proven statement.
    pub fn is_fatal(&self) -> bool {
        matches!(
            self,
            Error::NoShapeMatch(_)
                | Error::StructureNotFound(_)
                | Error::NoWitness(_)
                | Error::TheoremViolation { .. }
        )
    }
}
