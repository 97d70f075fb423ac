use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::certificate::{PsCertificate, PsCertifier, PsReason};
use crate::error::{Error, Result};
use crate::quadform::{OracleResult, OracleWitness};
use crate::values::{witness_key, ValueSet};

use super::field::{valuation, NumberFieldDescription};
use super::poly::NormFormPolynomial;

/// Default oracle budget: `13⁶` residue tuples (`p ≤ 13` for cubic forms).
pub const ORACLE_NF_MAX_POINTS: u64 = 13u64.pow(6);

/// Default cap on lattice points visited by [`enumerate_values_nf`].
pub const ENUMERATION_NF_MAX_POINTS: u64 = 200_000_000;

/// Sufficient test for `p ∈ 𝒫_S` valid for every module of the field:
/// `p ∤ disc(h)` and `h` has no root modulo `p`, so every prime above `p`
/// has residue degree at least two.
pub fn certify_ps_nf(field: &NumberFieldDescription, p: u64) -> PsCertificate {
    let reason = if (field.poly_disc() % p).is_zero() {
        PsReason::RamifiedOrIndexPrime
    } else if field.has_root_mod(p) {
        PsReason::RootExists
    } else {
        PsReason::NoRootModP
    };
    PsCertificate::new(p, reason)
}

impl PsCertifier for NumberFieldDescription {
    fn certify(&self, p: u64) -> PsCertificate {
        certify_ps_nf(self, p)
    }
}

pub fn oracle_ps_nf(form: &NormFormPolynomial, p: u64) -> Result<OracleResult> {
    oracle_ps_nf_with_budget(form, p, ORACLE_NF_MAX_POINTS)
}

/// Exact membership test for an integer-valued homogeneous form.
///
/// With `G = D·F` integral and `v = v_p(D)`, `p | F(x)` iff `p^{1+v} | G(x)`
/// and `p² | F(x)` iff `p^{2+v} | G(x)`. Both depend only on `x` modulo
/// `p^{2+v}`, so scanning that box is exact. The witness is the first failing
/// tuple in lexicographic order.
pub fn oracle_ps_nf_with_budget(form: &NormFormPolynomial, p: u64, max_points: u64) -> Result<OracleResult> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let (d, g) = form.integer_scaled();
    let v = valuation(&d, p);
    let n = form.nvars();
    let modulus = (p as u128).checked_pow(2 + v).filter(|&m| m < 1 << 32);
    let points = modulus.and_then(|m| m.checked_pow(n as u32));
    let Some((q, points)) = modulus.zip(points).filter(|(_, pts)| *pts <= max_points as u128) else {
        return Err(Error::budget(
            "oracle residue tuples",
            format!("{p}^{}", (2 + v) as usize * n),
            max_points,
        ));
    };
    debug_assert!(points <= max_points as u128);
    let q = q as u64;
    let lower = q / p;
    let qb = BigInt::from(q);
    let terms: Vec<(Vec<u32>, u64)> = g
        .iter()
        .map(|(e, c)| (e.clone(), c.mod_floor(&qb).to_u64().unwrap()))
        .filter(|(_, c)| *c != 0)
        .collect();
    let deg = form.degree() as usize;
    // pow[e][x] = x^e mod q
    let pow: Vec<Vec<u64>> = (0..=deg)
        .map(|e| (0..q).map(|x| (0..e).fold(1 % q, |acc, _| acc * x % q)).collect())
        .collect();
    let eval = |x: &[u64]| -> u64 {
        terms.iter().fold(0u64, |acc, (e, c)| {
            let mono = e
                .iter()
                .zip(x)
                .fold(*c, |m, (&ei, &xi)| m * pow[ei as usize][xi as usize] % q);
            (acc + mono) % q
        })
    };
    let hit = (0..q).into_par_iter().find_map_first(|x0| {
        let mut x = vec![0u64; n];
        x[0] = x0;
        loop {
            let val = eval(&x);
            if val != 0 && val % lower == 0 {
                return Some(x);
            }
            // odometer over the remaining coordinates
            let mut i = n;
            loop {
                i -= 1;
                if i == 0 {
                    return None;
                }
                x[i] += 1;
                if x[i] < q {
                    break;
                }
                x[i] = 0;
            }
        }
    });
    let Some(x) = hit else {
        return Ok(OracleResult {
            p,
            in_ps: true,
            witness: None,
        });
    };
    let coords: Vec<i64> = x.iter().map(|&c| c as i64).collect();
    let value = form.eval_i64(&coords);
    if !value.is_integer() {
        return Err(Error::InvalidArgument(format!(
            "form is not integer-valued at {coords:?}"
        )));
    }
    Ok(OracleResult {
        p,
        in_ps: false,
        witness: Some(OracleWitness {
            coords,
            value: value.to_integer(),
        }),
    })
}

pub fn enumerate_values_nf(form: &NormFormPolynomial, x_max: u64, boxed: u64) -> Result<ValueSet> {
    enumerate_values_nf_with(form, x_max, boxed, ENUMERATION_NF_MAX_POINTS)
}

/// Values `F(x)` with `‖x‖_∞ ≤ box` and `|F(x)| ≤ X`. Never complete.
pub fn enumerate_values_nf_with(
    form: &NormFormPolynomial,
    x_max: u64,
    boxed: u64,
    max_points: u64,
) -> Result<ValueSet> {
    let n = form.nvars();
    let side = 2 * boxed as u128 + 1;
    let points = side.checked_pow(n as u32).unwrap_or(u128::MAX);
    if points > max_points as u128 {
        return Err(Error::budget("enumeration points", points, max_points));
    }
    let (d, g) = form.integer_scaled();
    let d = d.to_i128().ok_or(Error::Overflow("form denominator"))?;
    let terms: Vec<(Vec<u32>, i128)> = g
        .iter()
        .map(|(e, c)| {
            c.to_i128()
                .map(|c| (e.clone(), c))
                .ok_or(Error::Overflow("form coefficients"))
        })
        .collect::<Result<_>>()?;
    let b = boxed as i64;
    let deg = form.degree();
    let pow: Vec<Vec<Option<i128>>> = (0..=deg)
        .map(|e| (-b..=b).map(|x| (x as i128).checked_pow(e)).collect())
        .collect();
    let eval = |x: &[i64]| -> Option<i128> {
        terms.iter().try_fold(0i128, |acc, (e, c)| {
            let mono = e
                .iter()
                .zip(x)
                .try_fold(*c, |m, (&ei, &xi)| m.checked_mul(pow[ei as usize][(xi + b) as usize]?))?;
            acc.checked_add(mono)
        })
    };
    let limit = x_max as i128;
    let rows: Vec<Vec<(i64, Vec<i64>)>> = (-b..=b)
        .into_par_iter()
        .map(|x0| {
            let mut out = Vec::new();
            let mut x = vec![-b; n];
            x[0] = x0;
            loop {
                let val = eval(&x).ok_or(Error::Overflow("norm form value"))?;
                if val % d != 0 {
                    return Err(Error::InvalidArgument(format!("form is not integer-valued at {x:?}")));
                }
                let val = val / d;
                if val.abs() <= limit {
                    out.push((val as i64, x.clone()));
                }
                let mut i = n;
                loop {
                    i -= 1;
                    if i == 0 {
                        return Ok(out);
                    }
                    x[i] += 1;
                    if x[i] <= b {
                        break;
                    }
                    x[i] = -b;
                }
            }
        })
        .collect::<Result<_>>()?;
    let mut set = ValueSet::new(false);
    for (v, x) in rows.into_iter().flatten() {
        set.offer(v, x, witness_key);
    }
    Ok(set)
}
