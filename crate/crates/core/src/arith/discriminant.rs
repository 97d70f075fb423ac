use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::factor::factorize;

/// `d = f² · Δ` with `Δ` a fundamental discriminant and `f ≥ 1` the conductor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantDecomposition {
    #[serde(with = "crate::serde_util::bigint")]
    pub d: BigInt,
    #[serde(rename = "Delta", with = "crate::serde_util::bigint")]
    pub delta: BigInt,
    #[serde(with = "crate::serde_util::bigint")]
    pub f: BigInt,
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Squarefree test by factorization.
pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    if n.is_zero() {
        return Ok(false);
    }
    Ok(factorize(n)?.factors.iter().all(|p| p.exponent == 1))
}

/// The fundamentality predicate: `Δ ≡ 1 (mod 4)` squarefree, or `Δ = 4m`
/// with `m ≡ 2, 3 (mod 4)` squarefree. `Δ = 1` is excluded.
pub fn is_fundamental_discriminant(delta: &BigInt) -> Result<bool> {
    if delta.is_one() || delta.is_zero() {
        return Ok(false);
    }
    let four = BigInt::from(4u8);
    let r = delta.mod_floor(&four);
    if r.is_one() {
        return is_squarefree(delta);
    }
    if r.is_zero() {
        let m = delta / &four;
        let mr = m.mod_floor(&four);
        if mr == BigInt::from(2u8) || mr == BigInt::from(3u8) {
            return is_squarefree(&m);
        }
    }
    Ok(false)
}

/// Split a discriminant into its fundamental part and conductor.
pub fn fundamental_discriminant(d: &BigInt) -> Result<DiscriminantDecomposition> {
    let four = BigInt::from(4u8);
    let r = d.mod_floor(&four);
    if d.is_zero() {
        return Err(Error::InvalidDiscriminant {
            d: d.clone(),
            reason: "discriminant is zero",
        });
    }
    if !(r.is_zero() || r.is_one()) {
        return Err(Error::InvalidDiscriminant {
            d: d.clone(),
            reason: "not congruent to 0 or 1 mod 4",
        });
    }
    if is_square(d) {
        return Err(Error::InvalidDiscriminant {
            d: d.clone(),
            reason: "perfect square",
        });
    }
    let fact = factorize(d)?;
    // d = s² · m with m squarefree (sign included)
    let mut s = BigInt::one();
    let mut m = BigInt::from(fact.sign);
    for pp in &fact.factors {
        s *= num_traits::pow(pp.prime.clone(), (pp.exponent / 2) as usize);
        if pp.exponent % 2 == 1 {
            m *= &pp.prime;
        }
    }
    let (delta, f) = if m.mod_floor(&four).is_one() {
        (m, s)
    } else {
        // m ≡ 2, 3 (mod 4) forces s even because d ≡ 0, 1 (mod 4)
        debug_assert!(s.is_even());
        (m * &four, s / 2u8)
    };
    Ok(DiscriminantDecomposition { d: d.clone(), delta, f })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(d: i64) -> (i64, i64) {
        let r = fundamental_discriminant(&BigInt::from(d)).unwrap();
        (r.delta.try_into().unwrap(), r.f.try_into().unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(dec(-4), (-4, 1));
        assert_eq!(dec(-12), (-3, 2));
        assert_eq!(dec(45), (5, 3));
        assert_eq!(dec(8), (8, 1));
        assert_eq!(dec(-36), (-4, 3));
        assert_eq!(dec(-16), (-4, 2));
        assert_eq!(dec(32), (8, 2));
        assert_eq!(dec(-3), (-3, 1));
    }

    #[test]
    fn precondition_violations() {
        for d in [0i64, 4, 9, 2, 3, -1, -2, 6, 1] {
            assert!(
                matches!(
                    fundamental_discriminant(&BigInt::from(d)),
                    Err(Error::InvalidDiscriminant { .. })
                ),
                "d={d}"
            );
        }
    }

    #[test]
    fn fundamentality_predicate() {
        let fundamentals = [-3i64, -4, -7, -8, -11, 5, 8, 12, 13, -20, -24, 21, 24];
        for d in fundamentals {
            assert!(is_fundamental_discriminant(&BigInt::from(d)).unwrap(), "{d}");
        }
        for d in [1i64, -12, -16, 9, 20, 25, 32, -36, 45, 2, 3] {
            assert!(!is_fundamental_discriminant(&BigInt::from(d)).unwrap(), "{d}");
        }
    }
}
