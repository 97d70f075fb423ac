//! Exact integer primitives: gcd, Kronecker symbol, sieving, primality,
//! factorization and the fundamental-discriminant split.

mod discriminant;
mod factor;
mod kronecker;
mod primes;

pub use discriminant::{
    fundamental_discriminant, is_fundamental_discriminant, is_square, is_squarefree, DiscriminantDecomposition,
};
pub use factor::{factorize, factorize_with, FactorConfig, FactoredInteger, PrimePower};
pub use kronecker::{kronecker, kronecker_i64};
pub(crate) use primes::small_primes;
pub use primes::{is_prime, is_prime_u64, sieve_primes, sieve_primes_with, SieveConfig};

use num_bigint::BigInt;
use num_integer::Integer;

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Euler's totient of a positive integer below 2⁶³.
pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}
