use std::collections::BTreeMap;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::primes::{is_prime, small_primes};

/// Budget for [`factorize`].
#[derive(Debug, Clone, Copy)]
pub struct FactorConfig {
    /// Trial division covers all primes up to this bound (at most 10⁶).
    pub trial_bound: u64,
    /// Total rho iterations across all restarts.
    pub rho_iterations: u64,
    pub seed: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: 1_000_000,
            rho_iterations: 2_000_000,
            seed: 0x5eed_f00d,
        }
    }
}

/// A nonzero integer as `sign · ∏ pᵉ`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredInteger {
    pub sign: i8,
    pub factors: Vec<PrimePower>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    #[serde(with = "crate::serde_util::bigint")]
    pub prime: BigInt,
    pub exponent: u32,
}

impl FactoredInteger {
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for pp in &self.factors {
            v *= num_traits::pow(pp.prime.clone(), pp.exponent as usize);
        }
        v
    }
}

pub fn factorize(n: &BigInt) -> Result<FactoredInteger> {
    factorize_with(n, &FactorConfig::default())
}

pub fn factorize_with(n: &BigInt, config: &FactorConfig) -> Result<FactoredInteger> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let (found, rest) = split_prime_powers(&n.abs(), config);
    if let Some(cofactor) = rest.into_iter().next() {
        return Err(Error::FactorizationIncomplete { cofactor });
    }
    Ok(FactoredInteger {
        sign,
        factors: found
            .into_iter()
            .map(|(prime, exponent)| PrimePower { prime, exponent })
            .collect(),
    })
}

/// Factor `n > 0` as far as the budget allows: the proven prime powers
/// (ascending) and the composite pieces left over.
pub(crate) fn split_prime_powers(n: &BigInt, config: &FactorConfig) -> (Vec<(BigInt, u32)>, Vec<BigInt>) {
    let mut found: BTreeMap<BigInt, u32> = BTreeMap::new();
    let mut m = n.clone();
    let bound = config.trial_bound.min(1_000_000);
    for &p in small_primes() {
        if p > bound {
            break;
        }
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            found.insert(pb, e);
        }
    }
    let mut rest = Vec::new();
    if !m.is_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut budget = config.rho_iterations;
        let mut stack = vec![m];
        while let Some(c) = stack.pop() {
            if c.is_one() {
                continue;
            }
            if is_prime(&c) {
                *found.entry(c).or_insert(0) += 1;
                continue;
            }
            if let Some(r) = perfect_power_root(&c) {
                let k = {
                    let mut k = 0usize;
                    let mut t = c.clone();
                    while (&t % &r).is_zero() {
                        t /= &r;
                        k += 1;
                    }
                    k
                };
                for _ in 0..k {
                    stack.push(r.clone());
                }
                continue;
            }
            match brent_rho(&c, &mut budget, &mut rng) {
                Some(d) => {
                    let e = &c / &d;
                    stack.push(d);
                    stack.push(e);
                }
                None => rest.push(c),
            }
        }
    }
    (found.into_iter().collect(), rest)
}

/// Smallest `r` with `c = r^k` for some `k ≥ 2`, if any.
fn perfect_power_root(c: &BigInt) -> Option<BigInt> {
    let bits = c.bits();
    for k in 2..=bits.max(2) as u32 {
        let r = num_integer::Roots::nth_root(c, k);
        if r <= BigInt::one() {
            break;
        }
        if num_traits::pow(r.clone(), k as usize) == *c {
            return perfect_power_root(&r).or(Some(r));
        }
    }
    None
}

/// Brent's cycle-finding variant of Pollard rho on `x ↦ x² + c`.
fn brent_rho(n: &BigInt, budget: &mut u64, rng: &mut ChaCha8Rng) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2u8));
    }
    if let Some(small) = n.to_u64() {
        return brent_rho_u64(small, budget, rng).map(BigInt::from);
    }
    const BATCH: u64 = 128;
    let lo = BigInt::from(1u8);
    while *budget > 0 {
        let c = rng.gen_bigint_range(&lo, n);
        let mut y = rng.gen_bigint_range(&lo, n);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() && *budget > 0 {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                *budget = budget.saturating_sub(steps);
                g = q.gcd(n);
                k += steps;
            }
            r *= 2;
        }
        if &g == n {
            // batch overshot: retrace one step at a time
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

fn brent_rho_u64(n: u64, budget: &mut u64, rng: &mut ChaCha8Rng) -> Option<u64> {
    use rand::Rng;
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    while *budget > 0 {
        let c = rng.gen_range(1..n);
        let f = |x: u64| ((mul(x, x) as u128 + c as u128) % n as u128) as u64;
        let mut y = rng.gen_range(1..n);
        let (mut r, mut q, mut g) = (1u64, 1u64, 1u64);
        let (mut x, mut ys) = (y, y);
        while g == 1 && *budget > 0 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = 128.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    q = mul(q, x.abs_diff(y));
                }
                *budget = budget.saturating_sub(steps);
                g = num_integer::gcd(q, n);
                k += steps;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = num_integer::gcd(x.abs_diff(ys), n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != 1 && g != n {
            return Some(g);
        }
    }
    None
}
