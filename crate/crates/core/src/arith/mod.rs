//! Arithmetization: bounded string predicates over codes, the Hilbert
//! calculus, proof and consistency predicates, partial truth, and fixed points.

pub mod schemas;
pub mod toolkit;
mod theory;
mod diagonal;
mod sentence_a;
mod truth;

pub use theory::{
    build_con, build_proof_predicate, con_template, ea_axioms, match_con, ProofPredicate, TheoryDescriptor,
    TheoryError, CODING_SCHEME,
};
pub use truth::{build_partial_truth, TruthPredicateError, TRUTH_VAR};
pub use diagonal::{
    build_iterated_con, con_of_code, diag_code, diag_predicate, diagonal, diagonalize, iterated_con_omega,
    prec_predicate, DiagonalError, DiagonalResult, OmegaCon, OrdinalNotation,
};
pub use sentence_a::{build_sentence_a, sigma1_fact, FactError, Graph, GraphError};
