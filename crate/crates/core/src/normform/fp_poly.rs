//! Polynomials over 𝔽_p, constant term first, no trailing zeros.

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = inv(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let k = top - dm + i;
                r[k] = (r[k] + p - mulmod(c, mi, p)) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    rem(&out, m, p)
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `base^e mod m`.
fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_rem(&r, &b, m, p);
        }
        b = mul_rem(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn minus_t(a: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    if a.len() < 2 {
        a.resize(2, 0);
    }
    a[1] = (a[1] + p - 1) % p;
    trim(a)
}

/// Reduce integer coefficients modulo `p`. The input must be monic mod `p`.
pub fn reduce(coeffs: &[num_bigint::BigInt], p: u64) -> Vec<u64> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let pb = num_bigint::BigInt::from(p);
    trim(coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Does `h` have a root in 𝔽_p? Uses `gcd(h, t^p - t)`.
pub fn has_root(h: &[u64], p: u64) -> bool {
    if h.first() == Some(&0) || h.is_empty() {
        return true;
    }
    if h.len() <= 1 {
        return false;
    }
    let tp = pow_rem(&[0, 1], p, h, p);
    gcd(h.to_vec(), minus_t(&tp, p), p).len() > 1
}

/// Ben-Or: a monic `h` of degree `n` is irreducible over 𝔽_p iff
/// `gcd(h, t^{p^i} - t) = 1` for every `1 ≤ i ≤ n/2`.
pub fn is_irreducible(h: &[u64], p: u64) -> bool {
    let n = h.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    let mut x = vec![0, 1];
    for _ in 0..n / 2 {
        x = pow_rem(&x, p, h, p);
        if gcd(h.to_vec(), minus_t(&x, p), p).len() > 1 {
            return false;
        }
    }
    true
}
