//! Numerical semigroups, the inverse polynomials `J_{H,h}` attached to their
//! Artinian reductions, and certificates for the structure theorems relating
//! the two.

mod bits;
pub mod bresinsky;
mod dsu;
pub mod error;
pub mod exponent;
pub mod factorization;
pub mod families;
pub mod gluing;
pub mod inverse_poly;
pub mod linalg;
pub mod polynomial;
pub mod quotient;
pub mod render;
pub mod semigroup;
pub mod structure;

pub use bresinsky::{
    alpha_table, nuf_report, pfaffian_structure, pfaffian_structure_for, pfaffian_structures,
    two_factorization_witness, two_factorization_witnesses, verify_4gor, AlphaTable,
    FourGorCertificate, PfaffianStructure,
};
pub use error::{Error, Result};
pub use exponent::ExponentVector;
pub use factorization::{
    denumerant, factorizations, has_unique_factorization, minimal_generators, mu_modulo, Binomial,
    BinomialIdealPresentation, FactorizationEngine,
};
pub use gluing::{
    glue, glued_inverse_poly, glued_monomial_check, symmetric_extension_test, GlueSide, Gluing,
    GluingSpec,
};
pub use inverse_poly::{
    annihilator_general, annihilator_of_semigroup_j, check_as, inverse_polynomial,
    verify_intersection_theorem, AnnihilatorPresentation, IntersectionCertificate,
    IntersectionMode, IntersectionVerifier,
};
pub use polynomial::{apply, InversePolynomial, Polynomial};
pub use render::{Labeling, SemigroupSummary};
pub use semigroup::{parse_generators, AperySet, NumericalSemigroup, SemigroupInvariants};
pub use structure::{
    ci_same_degree, classify_small_multiplicity, construct_from_alphas, construct_h_ec, is_free,
    monomial_criterion, FreenessWitness, HecConstruction, ShapeTag, ShapeVariant,
};
