//! Report types that exist only at the command line. Everything else is the
//! library's own domain object, serialized as is.

use apform_core::apfinder::{DensityHypothesis, NormFormBound, QuadraticBound};
use apform_core::normform::{ModuleLattice, NormFormPolynomial, NumberFieldDescription};
use apform_core::quadform::BinaryQuadraticForm;
use apform_core::serde_util;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NfBuildReport {
    pub field: NumberFieldDescription,
    /// HNF of the module, power-basis coordinates.
    pub module: ModuleLattice,
    /// Smallest positive integer `s` with `s·M ⊆ O_K`.
    #[serde(with = "serde_util::bigint")]
    pub scalar: BigInt,
    /// `O_K·M`.
    pub ok_module: ModuleLattice,
    #[serde(with = "serde_util::rational")]
    pub norm: BigRational,
    pub multiplier_ring: ModuleLattice,
    pub invertible: bool,
    pub norm_form: NormFormPolynomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityBound {
    pub hypothesis: DensityHypothesis,
    #[serde(with = "serde_util::real")]
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QfBoundReport {
    pub form: BinaryQuadraticForm,
    #[serde(rename = "Delta", with = "serde_util::bigint")]
    pub delta: BigInt,
    pub params: QuadraticBound,
    #[serde(with = "serde_util::real")]
    pub ln_g: f64,
    /// `null` when the bound exceeds the floating-point range.
    #[serde(with = "serde_util::real")]
    pub bound: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<DensityBound>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NfBoundReport {
    pub params: NormFormBound,
    #[serde(with = "serde_util::real")]
    pub ln_g: f64,
    #[serde(with = "serde_util::real")]
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct C1Row {
    #[serde(rename = "X")]
    pub x: u64,
    #[serde(with = "serde_util::real")]
    pub c1: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}
