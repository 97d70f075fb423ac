use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::factor::{split_prime_powers, FactorConfig};

/// Memory budget for [`sieve_primes`].
#[derive(Debug, Clone, Copy)]
pub struct SieveConfig {
    /// Odd numbers covered per segment.
    pub segment_len: usize,
    /// Largest admissible bound.
    pub max_limit: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_len: 1 << 16,
            max_limit: 400_000_000,
        }
    }
}

/// All primes `≤ limit`, ascending, with the default budget.
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    sieve_primes_with(limit, &SieveConfig::default())
}

/// Segmented sieve of Eratosthenes over odd numbers.
pub fn sieve_primes_with(limit: u64, config: &SieveConfig) -> Result<Vec<u64>> {
    if limit > config.max_limit {
        return Err(Error::budget("sieve bound", limit, config.max_limit));
    }
    if limit < 2 {
        return Ok(Vec::new());
    }
    let root = limit.sqrt();
    let base = simple_sieve(root);
    let mut out = vec![2u64];
    let seg = config.segment_len.max(64) as u64;
    // segment covers odd numbers lo, lo+2, ..., lo + 2(seg-1)
    let mut lo = 3u64;
    let mut marks = vec![false; seg as usize];
    while lo <= limit {
        let hi = (lo + 2 * (seg - 1)).min(limit | 1);
        let len = ((hi - lo) / 2 + 1) as usize;
        marks[..len].iter_mut().for_each(|m| *m = false);
        for &p in base.iter().skip(1) {
            if p * p > hi {
                break;
            }
            let mut start = (p * p).max(lo.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut j = (start - lo) / 2;
            while j < len as u64 {
                marks[j as usize] = true;
                j += p;
            }
        }
        for (i, &composite) in marks[..len].iter().enumerate() {
            let n = lo + 2 * i as u64;
            if !composite && n <= limit {
                out.push(n);
            }
        }
        lo = hi + 2;
    }
    Ok(out)
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut is_p = vec![true; n + 1];
    is_p[0] = false;
    if n >= 1 {
        is_p[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if is_p[i] {
            let mut j = i * i;
            while j <= n {
                is_p[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is_p.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

/// Primes below 10⁶, shared by trial division.
pub(crate) fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| simple_sieve(1_000_000))
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic for every `u64` (the first twelve prime bases suffice below 3.3·10²⁴).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigInt, a: &BigInt) -> bool {
    let n1: BigInt = n - 1u8;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

/// Exact primality test.
///
/// Negative inputs and `0, 1` are not prime. Below 2⁶⁴ the test is a
/// deterministic Miller–Rabin; above, strong probable primes are proven by a
/// Pocklington certificate built from a partial factorization of `n - 1`,
/// with trial division as the last resort.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(m) = n.to_u64() {
        return is_prime_u64(m);
    }
    for &p in &small_primes()[..168] {
        if (n % p).is_zero() {
            return false;
        }
    }
    for &a in &MR_BASES {
        if !strong_probable_prime(n, &BigInt::from(a)) {
            return false;
        }
    }
    match pocklington(n) {
        Some(verdict) => verdict,
        None => trial_division_is_prime(n),
    }
}

/// `Some(true)` when a certificate is found, `Some(false)` when a Fermat
/// witness shows compositeness, `None` when `n - 1` could not be factored far
/// enough.
fn pocklington(n: &BigInt) -> Option<bool> {
    let n1: BigInt = n - 1u8;
    let (found, _rest) = split_prime_powers(&n1, &FactorConfig::default());
    let mut f = BigInt::one();
    let mut primes = Vec::new();
    for (q, e) in found {
        f *= num_traits::pow(q.clone(), e as usize);
        primes.push(q);
        if &f * &f > *n {
            break;
        }
    }
    if &f * &f <= *n {
        return None;
    }
    for q in &primes {
        let e = &n1 / q;
        let mut ok = false;
        for a in 2u32..200 {
            let a = BigInt::from(a);
            if !a.modpow(&n1, n).is_one() {
                return Some(false);
            }
            let t = a.modpow(&e, n) - 1u8;
            if t.gcd(n).is_one() {
                ok = true;
                break;
            }
        }
        if !ok {
            return None;
        }
    }
    Some(true)
}

fn trial_division_is_prime(n: &BigInt) -> bool {
    let root = n.sqrt();
    let mut d = BigInt::from(3u8);
    while d <= root {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2u8;
    }
    n > &BigInt::one()
}

/// Number of primes `≤ x` counted by trial division; test helper.
#[cfg(test)]
pub(crate) fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
