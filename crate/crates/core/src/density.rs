//! Prime sums over certified primes, primes in progressions and
//! represented-prime counts.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime_u64, sieve_primes};
use crate::certificate::PsCertifier;
use crate::error::{Error, Result};
use crate::values::ValueSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    #[serde(rename = "X")]
    pub x: u64,
    /// `Σ ln p` over the counted primes.
    #[serde(with = "crate::serde_util::real")]
    pub sum_log: f64,
    pub count: u64,
    /// `π(X)`.
    pub reference_count: u64,
    /// `count / reference_count`, zero when there are no primes up to `X`.
    #[serde(with = "crate::serde_util::real")]
    pub ratio: f64,
    /// Whether the underlying data was exhaustive.
    pub complete: bool,
}

fn report(x: u64, counted: &[u64], reference_count: u64, complete: bool) -> DensityReport {
    // sequential in ascending order, so the float sum is reproducible
    let sum_log = counted.iter().map(|&p| (p as f64).ln()).sum();
    let count = counted.len() as u64;
    DensityReport {
        x,
        sum_log,
        count,
        reference_count,
        ratio: if reference_count == 0 {
            0.0
        } else {
            count as f64 / reference_count as f64
        },
        complete,
    }
}

/// `Σ ln p` over primes `p ≤ X` the certifier marks as certified.
pub fn theta_ps(certifier: &dyn PsCertifier, x: u64) -> Result<DensityReport> {
    let primes = sieve_primes(x)?;
    let certified: Vec<u64> = primes
        .par_iter()
        .filter(|&&p| certifier.certify(p).is_certified())
        .copied()
        .collect();
    Ok(report(x, &certified, primes.len() as u64, true))
}

/// `Σ ln p` over primes `p ≤ X` with `p ≡ c (mod modulus)`.
pub fn theta_ap(modulus: u64, c: i64, x: u64) -> Result<DensityReport> {
    if modulus == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let (mb, cb) = (BigInt::from(modulus), BigInt::from(c));
    if gcd(&cb, &mb) != BigInt::from(1) {
        return Err(Error::NonCoprimeResidue {
            residue: cb,
            modulus: mb,
        });
    }
    let r = c.rem_euclid(modulus as i64) as u64;
    let primes = sieve_primes(x)?;
    let hits: Vec<u64> = primes.iter().copied().filter(|p| p % modulus == r).collect();
    Ok(report(x, &hits, primes.len() as u64, true))
}

/// `X / θ_S(X)`: the least `C₁` for which the density hypothesis holds at `X`.
pub fn empirical_c1(certifier: &dyn PsCertifier, x: u64) -> Result<f64> {
    let t = theta_ps(certifier, x)?;
    if t.sum_log <= 0.0 {
        return Err(Error::ZeroThetaSum { x });
    }
    Ok(x as f64 / t.sum_log)
}

/// Primes `p ≤ X` that occur in `values`, against `π(X)`. Completeness is
/// inherited from the value set.
pub fn represented_prime_density(values: &ValueSet, x: u64) -> Result<DensityReport> {
    let reference = sieve_primes(x)?.len() as u64;
    let hits: Vec<u64> = values
        .values()
        .filter(|&v| v >= 2 && v as u64 <= x && is_prime_u64(v as u64))
        .map(|v| v as u64)
        .collect();
    Ok(report(x, &hits, reference, values.complete))
}
