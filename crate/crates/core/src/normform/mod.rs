//! Number fields with a supplied integral basis: module lattices in Hermite
//! normal form, ideal arithmetic, the symbolic norm form of a module and the
//! `𝒫_S` certifier and oracle for norm forms.

mod field;
mod fp_poly;
mod ideal;
mod lattice;
mod linalg;
mod poly;
mod scan;

pub use field::{parse_vectors, NumberFieldDescription};
pub use ideal::{clear_denominators, colon, is_invertible_ideal, module_hnf, multiplier_ring, ok_module, product};
pub use lattice::{hermite_normal_form, ModuleLattice};
pub use poly::{norm_form, norm_form_for_basis, norm_form_for_basis_with, NormFormPolynomial, NORM_FORM_MAX_DEGREE};
pub use scan::{
    certify_ps_nf, enumerate_values_nf, enumerate_values_nf_with, oracle_ps_nf, oracle_ps_nf_with_budget,
    ENUMERATION_NF_MAX_POINTS, ORACLE_NF_MAX_POINTS,
};
