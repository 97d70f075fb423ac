//! Binary quadratic forms: discriminant data, normalization, the residue set
//! `T`, the character certifier and its exact mod-`p²` oracle, and value-set
//! enumeration.

mod certify;
mod enumerate;
mod form;

pub use certify::{
    certify_ps, oracle_ps, oracle_ps_with_budget, residue_set_t, OracleBackedCertifier, OracleResult, OracleWitness,
    ResidueSetT, ORACLE_MAX_POINTS, RESIDUE_SET_BUDGET,
};
pub use enumerate::{enumerate_values, enumerate_values_with, represents, Representation, ENUMERATION_MAX_POINTS};
pub use form::{analyze, normalize, BinaryQuadraticForm, FormAnalysis, Normalized, Shape};
