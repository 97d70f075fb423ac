pub mod apfinder;
pub mod arith;
pub mod certificate;
pub mod density;
pub mod error;
pub mod normform;
pub mod quadform;
pub mod serde_util;
pub mod values;

pub use error::{Error, Result};
