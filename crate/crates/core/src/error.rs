use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced by the library.
///
/// Every variant is a domain error: the inputs were well formed but the
/// requested computation is undefined, outside its budget, or could not be
/// completed exactly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization incomplete: unfactored cofactor {cofactor}")]
    FactorizationIncomplete { cofactor: BigInt },

    #[error("invalid discriminant {d}: {reason}")]
    InvalidDiscriminant { d: BigInt, reason: &'static str },

    #[error("form is reducible over the rationals: discriminant {d} is a perfect square")]
    ReducibleForm { d: BigInt },

    #[error("{what}: requested {requested} exceeds budget {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: String,
        limit: String,
    },

    #[error("generators do not span a full-rank lattice")]
    RankDeficient,

    #[error("invalid number field: {0}")]
    InvalidField(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("residue {residue} is not coprime to modulus {modulus}")]
    NonCoprimeResidue { residue: BigInt, modulus: BigInt },

    #[error("value set is empty")]
    EmptyValueSet,

    #[error("sum over certified primes up to {x} is zero")]
    ZeroThetaSum { x: u64 },

    #[error("supplied order is not the ring of multipliers of the module")]
    NotMultiplierRing,

    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FactorizationIncomplete { .. } => "factorization_incomplete",
            Error::InvalidDiscriminant { .. } => "invalid_discriminant",
            Error::ReducibleForm { .. } => "reducible_form",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::RankDeficient => "rank_deficient",
            Error::InvalidField(_) => "invalid_field",
            Error::InvalidModule(_) => "invalid_module",
            Error::NonCoprimeResidue { .. } => "non_coprime_residue",
            Error::EmptyValueSet => "empty_value_set",
            Error::ZeroThetaSum { .. } => "zero_theta_sum",
            Error::NotMultiplierRing => "not_multiplier_ring",
            Error::Overflow(_) => "overflow",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse(_) => "parse",
        }
    }

    pub(crate) fn budget(what: &'static str, requested: impl ToString, limit: impl ToString) -> Self {
        Error::BudgetExceeded {
            what,
            requested: requested.to_string(),
            limit: limit.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
