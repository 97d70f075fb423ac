use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Kronecker symbol `(a/n)` for arbitrary integers.
///
/// Conventions: `(a/0) = 1` if `a = ±1` and `0` otherwise; `(a/-1) = -1`
/// for negative `a`; `(a/2) = 0` for even `a`, `+1` for `a ≡ ±1 (mod 8)`
/// and `-1` for `a ≡ ±3 (mod 8)`.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i8 {
    if let (Some(a), Some(n)) = (a.to_i64(), n.to_i64()) {
        return kronecker_i64(a, n);
    }
    kronecker_big(a, n)
}

fn kronecker_big(a: &BigInt, n: &BigInt) -> i8 {
    if n.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    if a.is_even() && n.is_even() {
        return 0;
    }
    let mut n = n.clone();
    let mut k: i8 = 1;
    let v = n.trailing_zeros().unwrap_or(0);
    n >>= v;
    if v % 2 == 1 {
        k = two_over(a.mod_floor(&BigInt::from(8u8)).to_u8().unwrap());
    }
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            k = -k;
        }
    }
    // n is now odd and positive: Jacobi symbol with reciprocity.
    let mut a = a.mod_floor(&n);
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        a >>= z;
        let n8 = (&n & BigInt::from(7u8)).to_u8().unwrap();
        if z % 2 == 1 && (n8 == 3 || n8 == 5) {
            k = -k;
        }
        let a4 = (&a & BigInt::from(3u8)).to_u8().unwrap();
        if a4 == 3 && n8 % 4 == 3 {
            k = -k;
        }
        std::mem::swap(&mut a, &mut n);
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        k
    } else {
        0
    }
}

/// Machine-word Kronecker symbol with the same conventions as [`kronecker`].
pub fn kronecker_i64(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut k: i8 = 1;
    let v = n.trailing_zeros();
    let mut m = (n.unsigned_abs()) >> v;
    if v % 2 == 1 {
        k = two_over(a.rem_euclid(8) as u8);
    }
    if n < 0 && a < 0 {
        k = -k;
    }
    // m is odd, so it fits in i64 even when n = i64::MIN
    let mut b = a.rem_euclid(m as i64) as u64;
    while b != 0 {
        let z = b.trailing_zeros();
        b >>= z;
        if z % 2 == 1 && (m % 8 == 3 || m % 8 == 5) {
            k = -k;
        }
        if b % 4 == 3 && m % 4 == 3 {
            k = -k;
        }
        std::mem::swap(&mut b, &mut m);
        b %= m;
    }
    if m == 1 {
        k
    } else {
        0
    }
}

/// `(a/2)` for odd `a`, given `a mod 8`.
fn two_over(a_mod_8: u8) -> i8 {
    match a_mod_8 {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}
