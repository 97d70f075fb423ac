use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::sieve_primes;
use crate::certificate::{PsCertificate, PsCertifier};
use crate::error::{Error, Result};
use crate::values::ValueSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApTerm {
    pub value: i64,
    /// Coordinates representing `value`, when the value set recorded them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<i64>>,
}

/// The progression `ℓ, ℓ + g, …, ℓ + (k-1)g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApReport {
    pub ell: i64,
    pub g: u64,
    pub k: u64,
    pub witnesses: Vec<ApTerm>,
    /// Whether the value set searched was exhaustive.
    pub complete_set: bool,
}

impl ApReport {
    pub fn terms(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.k as i64).map(move |r| self.ell + r * self.g as i64)
    }
}

fn report(values: &ValueSet, ell: i64, g: u64, k: u64) -> ApReport {
    let witnesses = (0..k as i64)
        .map(|r| {
            let value = ell + r * g as i64;
            ApTerm {
                value,
                coords: values.witness(value).map(<[i64]>::to_vec),
            }
        })
        .collect();
    ApReport {
        ell,
        g,
        k,
        witnesses,
        complete_set: values.complete,
    }
}

/// Longest progression with difference `g` inside `values`; ties go to the
/// smallest `ℓ`.
pub fn longest_ap_with_difference(values: &ValueSet, g: u64) -> Result<ApReport> {
    if values.is_empty() {
        return Err(Error::EmptyValueSet);
    }
    if g == 0 || g > i64::MAX as u64 {
        return Err(Error::InvalidArgument(format!("difference {g} out of range")));
    }
    let step = g as i64;
    let mut run: HashMap<i64, u64> = HashMap::with_capacity(values.len());
    let (mut best_end, mut best_k) = (i64::MIN, 0u64);
    // ascending scan: the run ending at v extends the run ending at v - g
    for v in values.values() {
        let k = v.checked_sub(step).and_then(|u| run.get(&u)).map_or(1, |k| k + 1);
        run.insert(v, k);
        if k > best_k {
            best_k = k;
            best_end = v;
        }
    }
    let ell = best_end - (best_k as i64 - 1) * step;
    Ok(report(values, ell, g, best_k))
}

/// Longest progression for each difference `1 ≤ g ≤ gmax`, in order of `g`.
pub fn longest_ap_per_difference(values: &ValueSet, gmax: u64) -> Result<Vec<ApReport>> {
    if values.is_empty() {
        return Err(Error::EmptyValueSet);
    }
    (1..=gmax)
        .into_par_iter()
        .map(|g| longest_ap_with_difference(values, g))
        .collect()
}

/// Best progression over `1 ≤ g ≤ gmax`: longest first, then smaller `g`,
/// then smaller `ℓ`.
pub fn search_longest_ap(values: &ValueSet, gmax: u64) -> Result<ApReport> {
    if gmax == 0 {
        return Err(Error::InvalidArgument("gmax must be positive".into()));
    }
    let all = longest_ap_per_difference(values, gmax)?;
    Ok(all
        .into_iter()
        .min_by_key(|r| (std::cmp::Reverse(r.k), r.g, r.ell))
        .expect("gmax >= 1"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DivisibilityCheck {
    /// No certified prime in the scanned range contradicts `(g, k)`.
    Consistent { primes_checked: u64 },
    /// A certified `p ∈ 𝒫_S` with `2p ≤ k` and `p ∤ g`: no progression with
    /// these parameters lies in the value set.
    Violated { p: u64, certificate: PsCertificate },
}

/// Scan primes `p ≤ min(k/2, pbudget)` for the smallest certified
/// `p ∈ 𝒫_S` not dividing `g`. `pbudget` defaults to `k/2`.
pub fn check_divisibility_certificate(
    certifier: &dyn PsCertifier,
    g: u64,
    k: u64,
    pbudget: Option<u64>,
) -> Result<DivisibilityCheck> {
    if g == 0 || k == 0 {
        return Err(Error::InvalidArgument("g and k must be positive".into()));
    }
    let limit = pbudget.map_or(k / 2, |b| b.min(k / 2));
    let primes = sieve_primes(limit)?;
    for &p in &primes {
        if g.is_multiple_of(p) {
            continue;
        }
        let certificate = certifier.certify(p);
        if certificate.is_certified() {
            return Ok(DivisibilityCheck::Violated { p, certificate });
        }
    }
    Ok(DivisibilityCheck::Consistent {
        primes_checked: primes.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::PsReason;
    use crate::quadform::{analyze, enumerate_values, BinaryQuadraticForm};

    fn set(v: &[i64]) -> ValueSet {
        ValueSet::from_values(v.iter().copied(), true)
    }

    fn sums_of_two_squares(x: u64) -> ValueSet {
        enumerate_values(&BinaryQuadraticForm::new(1, 0, 1).unwrap(), x, None).unwrap()
    }

    #[test]
    fn difference_examples() {
        let r = longest_ap_with_difference(&set(&[0, 2, 4, 8]), 2).unwrap();
        assert_eq!((r.ell, r.k), (0, 3));
        let r = longest_ap_with_difference(&set(&[5]), 7).unwrap();
        assert_eq!((r.ell, r.k), (5, 1));
        let r = longest_ap_with_difference(&sums_of_two_squares(100), 4).unwrap();
        assert_eq!((r.ell, r.k), (1, 5));
        assert_eq!(r.terms().collect::<Vec<_>>(), vec![1, 5, 9, 13, 17]);
        assert!(r.complete_set);
        assert_eq!(r.witnesses[1].coords.as_deref(), Some(&[1, 2][..]));
        assert_eq!(longest_ap_with_difference(&set(&[]), 1), Err(Error::EmptyValueSet));
    }

    #[test]
    fn ties_prefer_small_start() {
        let r = longest_ap_with_difference(&set(&[-7, -4, 10, 13, 20]), 3).unwrap();
        assert_eq!((r.ell, r.k), (-7, 2));
    }

    #[test]
    fn search_examples() {
        let r = search_longest_ap(&set(&[1, 2, 3, 10]), 2).unwrap();
        assert_eq!((r.ell, r.g, r.k), (1, 1, 3));
        let r = search_longest_ap(&set(&[0]), 9).unwrap();
        assert_eq!((r.ell, r.g, r.k), (0, 1, 1));
        let r = search_longest_ap(&sums_of_two_squares(100), 8).unwrap();
        assert!(r.k >= 5);
    }

    #[test]
    fn certificate_examples() {
        let f = analyze(&BinaryQuadraticForm::new(1, 0, 1).unwrap()).unwrap();
        assert_eq!(
            check_divisibility_certificate(&f, 24, 7, None).unwrap(),
            DivisibilityCheck::Consistent { primes_checked: 2 }
        );
        match check_divisibility_certificate(&f, 5, 6, None).unwrap() {
            DivisibilityCheck::Violated { p, certificate } => {
                assert_eq!(p, 3);
                assert_eq!(certificate.reason, PsReason::CharacterMinusOne);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            check_divisibility_certificate(&f, 5, 2, None).unwrap(),
            DivisibilityCheck::Consistent { .. }
        ));
        assert!(matches!(
            check_divisibility_certificate(&f, 5, 6, Some(2)).unwrap(),
            DivisibilityCheck::Consistent { .. }
        ));
    }

    #[test]
    fn serde_shapes() {
        let f = analyze(&BinaryQuadraticForm::new(1, 0, 1).unwrap()).unwrap();
        let v = check_divisibility_certificate(&f, 5, 6, None).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.starts_with("{\"verdict\":\"violated\",\"p\":3"));
        assert_eq!(serde_json::from_str::<DivisibilityCheck>(&s).unwrap(), v);
    }
}
