use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_fundamental_discriminant, kronecker, kronecker_i64};
use crate::certificate::{PsCertificate, PsCertifier, PsReason};
use crate::error::{Error, Result};

use super::form::{BinaryQuadraticForm, FormAnalysis};

/// Largest `|Δ|` for which [`residue_set_t`] materializes the residues.
pub const RESIDUE_SET_BUDGET: u64 = 10_000_000;

/// The non-kernel of the character `c ↦ (Δ/c)` on `(ℤ/|Δ|)^×`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSetT {
    #[serde(rename = "Delta", with = "crate::serde_util::bigint")]
    pub delta: BigInt,
    pub modulus: u64,
    pub residues: Vec<u64>,
}

impl ResidueSetT {
    pub fn contains(&self, c: u64) -> bool {
        self.residues.binary_search(&(c % self.modulus)).is_ok()
    }
}

pub fn residue_set_t(delta: &BigInt) -> Result<ResidueSetT> {
    if !is_fundamental_discriminant(delta)? {
        return Err(Error::InvalidDiscriminant {
            d: delta.clone(),
            reason: "not a fundamental discriminant",
        });
    }
    let modulus = delta.abs().to_u64().filter(|&m| m <= RESIDUE_SET_BUDGET);
    let Some(modulus) = modulus else {
        return Err(Error::budget("residue set modulus", delta.abs(), RESIDUE_SET_BUDGET));
    };
    let dl = delta.to_i64().unwrap();
    let residues = (1..modulus).filter(|&c| kronecker_i64(dl, c as i64) == -1).collect();
    Ok(ResidueSetT {
        delta: delta.clone(),
        modulus,
        residues,
    })
}

/// Fast sufficient test for `p ∈ 𝒫_S`, `S = F(ℤ²)`.
///
/// Certifies exactly the odd primes `p ∤ Δ` with `(Δ/p) = -1`. Primes
/// dividing the content of `F` are never certified.
pub fn certify_ps(analysis: &FormAnalysis, p: u64) -> PsCertificate {
    let reason = if p == 2 {
        PsReason::EvenPrime
    } else if (analysis.form.content() % p).is_zero() {
        PsReason::DividesContent
    } else if (analysis.delta() % p).is_zero() {
        PsReason::DividesDelta
    } else if kronecker(analysis.delta(), &BigInt::from(p)) == -1 {
        PsReason::CharacterMinusOne
    } else {
        PsReason::CharacterPlusOne
    };
    PsCertificate::new(p, reason)
}

impl PsCertifier for FormAnalysis {
    fn certify(&self, p: u64) -> PsCertificate {
        certify_ps(self, p)
    }
}

/// Default oracle budget: `p⁴ ≤ 97⁴` residue pairs.
pub const ORACLE_MAX_POINTS: u64 = 97 * 97 * 97 * 97;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleWitness {
    pub coords: Vec<i64>,
    #[serde(with = "crate::serde_util::bigint")]
    pub value: BigInt,
}

/// Exact membership of `p` in `𝒫_S`, with a counterexample when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub p: u64,
    pub in_ps: bool,
    pub witness: Option<OracleWitness>,
}

pub fn oracle_ps(form: &BinaryQuadraticForm, p: u64) -> Result<OracleResult> {
    oracle_ps_with_budget(form, p, ORACLE_MAX_POINTS)
}

/// Scan all `(x, y) ∈ [0, p²)²`. Since `F` is homogeneous of degree two,
/// `F(x, y) mod p²` depends only on `(x, y) mod p²`, so the scan is exact.
/// The witness is the first failing pair in lexicographic order.
pub fn oracle_ps_with_budget(form: &BinaryQuadraticForm, p: u64, max_points: u64) -> Result<OracleResult> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let points = (p as u128).pow(4);
    if points > max_points as u128 || p >= 1 << 16 {
        return Err(Error::budget("mod p^2 oracle points", points, max_points));
    }
    let q = p * p;
    let qb = BigInt::from(q);
    let red = |c: &BigInt| c.mod_floor(&qb).to_u64().unwrap();
    let (a, b, c) = (red(form.a()), red(form.b()), red(form.c()));
    let hit = (0..q).into_par_iter().find_map_first(|x| {
        let ax2 = a * (x * x % q) % q;
        let bx = b * x % q;
        (0..q).find_map(|y| {
            let v = (ax2 + bx * y % q + c * (y * y % q) % q) % q;
            (v != 0 && v.is_multiple_of(p)).then_some((x, y))
        })
    });
    Ok(match hit {
        None => OracleResult {
            p,
            in_ps: true,
            witness: None,
        },
        Some((x, y)) => {
            let (x, y) = (x as i64, y as i64);
            OracleResult {
                p,
                in_ps: false,
                witness: Some(OracleWitness {
                    coords: vec![x, y],
                    value: form.eval(&x.into(), &y.into()),
                }),
            }
        }
    })
}

/// Fast path first; primes it leaves open are settled by the exact oracle
/// when the scan fits in `max_points`.
#[derive(Debug, Clone)]
pub struct OracleBackedCertifier {
    pub analysis: FormAnalysis,
    pub max_points: u64,
}

impl PsCertifier for OracleBackedCertifier {
    fn certify(&self, p: u64) -> PsCertificate {
        let fast = certify_ps(&self.analysis, p);
        if fast.is_certified() {
            return fast;
        }
        match oracle_ps_with_budget(&self.analysis.form, p, self.max_points) {
            Ok(r) if r.in_ps => PsCertificate::new(p, PsReason::ExhaustiveScan),
            _ => fast,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{euler_phi, is_square};
    use crate::certificate::Verdict;
    use crate::quadform::analyze;

    fn q(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(a, b, c).unwrap()
    }

    #[test]
    fn residue_set_examples() {
        assert_eq!(residue_set_t(&BigInt::from(-4)).unwrap().residues, vec![3]);
        assert_eq!(residue_set_t(&BigInt::from(-3)).unwrap().residues, vec![2]);
        assert_eq!(residue_set_t(&BigInt::from(5)).unwrap().residues, vec![2, 3]);
        assert!(residue_set_t(&BigInt::from(-12)).is_err());
        assert!(residue_set_t(&BigInt::from(1)).is_err());
    }

    #[test]
    fn residue_set_cardinality() {
        for d in -10_000i64..=10_000 {
            let bd = BigInt::from(d);
            if !is_fundamental_discriminant(&bd).unwrap() {
                continue;
            }
            let t = residue_set_t(&bd).unwrap();
            assert_eq!(t.residues.len() as u64, euler_phi(d.unsigned_abs()) / 2, "Delta={d}");
            for &r in t.residues.iter().take(20) {
                assert_eq!(num_integer::gcd(r, d.unsigned_abs()), 1);
            }
        }
    }

    #[test]
    fn certify_examples() {
        let sum2 = analyze(&q(1, 0, 1)).unwrap();
        assert_eq!(certify_ps(&sum2, 3), PsCertificate::new(3, PsReason::CharacterMinusOne));
        assert_eq!(certify_ps(&sum2, 3).verdict, Verdict::Certified);
        assert_eq!(certify_ps(&sum2, 5).reason, PsReason::CharacterPlusOne);
        assert_eq!(certify_ps(&sum2, 2).reason, PsReason::EvenPrime);
        let f3 = analyze(&q(1, 0, 3)).unwrap();
        assert_eq!(certify_ps(&f3, 3).reason, PsReason::DividesDelta);
        let f9 = analyze(&q(1, 0, 9)).unwrap();
        assert!(certify_ps(&f9, 3).is_certified());
        let nonprim = analyze(&q(3, 0, 3)).unwrap();
        assert_eq!(certify_ps(&nonprim, 3).reason, PsReason::DividesContent);
    }

    #[test]
    fn oracle_examples() {
        let r = oracle_ps(&q(1, 0, 1), 3).unwrap();
        assert!(r.in_ps && r.witness.is_none());

        let r = oracle_ps(&q(1, 0, 1), 5).unwrap();
        assert!(!r.in_ps);
        let w = r.witness.unwrap();
        assert_eq!(w.coords, vec![1, 2]);
        assert_eq!(w.value, BigInt::from(5));

        let r = oracle_ps(&q(1, 0, 3), 3).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.coords, vec![0, 1]);
        assert_eq!(w.value, BigInt::from(3));

        assert!(oracle_ps(&q(1, 0, 9), 3).unwrap().in_ps);
        // 3x² + 3y² takes the value 3
        assert!(!oracle_ps(&q(3, 0, 3), 3).unwrap().in_ps);
    }

    #[test]
    fn oracle_budget() {
        assert!(matches!(oracle_ps(&q(1, 0, 1), 101), Err(Error::BudgetExceeded { .. })));
        assert!(oracle_ps_with_budget(&q(1, 0, 1), 101, 200_000_000).is_ok());
    }

    #[test]
    fn oracle_backed_certifier_settles_open_primes() {
        let c = OracleBackedCertifier {
            analysis: analyze(&q(1, 0, 1)).unwrap(),
            max_points: ORACLE_MAX_POINTS,
        };
        // 2 = 1² + 1²
        assert!(!c.certify(2).is_certified());
        assert!(!c.certify(5).is_certified());
        assert_eq!(c.certify(7).reason, PsReason::CharacterMinusOne);
        let c = OracleBackedCertifier {
            analysis: analyze(&q(1, 1, 1)).unwrap(),
            max_points: ORACLE_MAX_POINTS,
        };
        // x² + xy + y² is odd unless x, y are both even
        assert_eq!(c.certify(2).reason, PsReason::ExhaustiveScan);
    }

    #[test]
    fn sharpness_off_bad_primes() {
        for a in 1i64..=6 {
            for b in -6i64..=6 {
                for cc in -6i64..=6 {
                    let d = b * b - 4 * a * cc;
                    if is_square(&BigInt::from(d)) {
                        continue;
                    }
                    let f = q(a, b, cc);
                    let an = analyze(&f).unwrap();
                    if !an.primitive {
                        continue;
                    }
                    for p in [3u64, 5, 7, 11, 13] {
                        if d % p as i64 == 0 {
                            continue;
                        }
                        let o = oracle_ps(&f, p).unwrap();
                        let chi = kronecker(an.delta(), &BigInt::from(p));
                        assert_eq!(o.in_ps, chi == -1, "F={f} p={p}");
                    }
                }
            }
        }
    }
}
