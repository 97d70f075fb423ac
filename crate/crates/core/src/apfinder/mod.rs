//! Arithmetic progressions inside value sets, the divisibility certificate
//! for long progressions, and closed-form length bounds.

mod bounds;
mod progression;

pub use bounds::{
    bound_from_density, bound_from_density_ln, bound_nf, bound_nf_ln, bound_qf, bound_qf_ln, ln_difference,
    DensityHypothesis, NormFormBound, QuadraticBound, L_NF, L_QF,
};
pub use progression::{
    check_divisibility_certificate, longest_ap_per_difference, longest_ap_with_difference, search_longest_ap, ApReport,
    ApTerm, DivisibilityCheck,
};
