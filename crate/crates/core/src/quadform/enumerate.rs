use num_integer::Roots;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::values::{witness_key, ValueSet};

use super::form::{BinaryQuadraticForm, Shape};

/// Default cap on lattice points visited by one enumeration.
pub const ENUMERATION_MAX_POINTS: u64 = 200_000_000;

fn coefficients(form: &BinaryQuadraticForm) -> Result<(i128, i128, i128)> {
    let (a, b, c) = form
        .small_coefficients()
        .ok_or_else(|| Error::budget("form coefficient size", form, "64-bit"))?;
    Ok((a as i128, b as i128, c as i128))
}

fn isqrt(n: i128) -> i128 {
    if n <= 0 {
        0
    } else {
        (n as u128).sqrt() as i128
    }
}

/// Represented values of `F`.
///
/// Definite forms: exactly `S ∩ [0, X]` (the ellipse `F ≤ X` is finite).
/// Indefinite forms: the values in `[-X, X]` reached with both coordinates
/// in `[-box, box]`; flagged incomplete.
pub fn enumerate_values(form: &BinaryQuadraticForm, x_max: u64, boxed: Option<u64>) -> Result<ValueSet> {
    enumerate_values_with(form, x_max, boxed, ENUMERATION_MAX_POINTS)
}

pub fn enumerate_values_with(
    form: &BinaryQuadraticForm,
    x_max: u64,
    boxed: Option<u64>,
    max_points: u64,
) -> Result<ValueSet> {
    let (a, b, c) = coefficients(form)?;
    let d = b * b - 4 * a * c;
    let x = x_max as i128;
    let mut set = ValueSet::new(form.shape() != Shape::Indefinite);
    let rows: Vec<(i64, Vec<i64>)> = match form.shape() {
        Shape::NegativeDefinite => {
            set.offer(0, vec![0, 0], witness_key);
            return Ok(set);
        }
        Shape::PositiveDefinite => {
            let bound = |coef: i128| {
                coef.checked_mul(4 * x)
                    .map(|t| isqrt(t / -d))
                    .ok_or(Error::Overflow("enumeration bounds"))
            };
            let (ymax, xmax) = (bound(a)?, bound(c)?);
            let points = (2 * ymax as u128 + 1) * (2 * xmax as u128 + 1);
            if points > max_points as u128 {
                return Err(Error::budget("enumeration points", points, max_points));
            }
            (-ymax..=ymax)
                .into_par_iter()
                .map(|y| {
                    // 4a·F = (2ax + by)² + |d|y², so 2ax + by ∈ [-s, s], s² ≤ 4aX - |d|y²
                    let s = isqrt(4 * a * x + d * y * y);
                    let lo = (-b * y - s).div_euclid(2 * a) - 1;
                    let hi = (-b * y + s).div_euclid(2 * a) + 1;
                    let xs = (lo..=hi)
                        .filter(|&t| {
                            let v = a * t * t + b * t * y + c * y * y;
                            v <= x
                        })
                        .map(|t| t as i64)
                        .collect();
                    (y as i64, xs)
                })
                .collect()
        }
        Shape::Indefinite => {
            let bx = boxed.ok_or_else(|| Error::InvalidArgument("indefinite forms need a search box".into()))? as i128;
            let points = (2 * bx as u128 + 1).pow(2);
            if points > max_points as u128 {
                return Err(Error::budget("enumeration points", points, max_points));
            }
            (-bx..=bx)
                .into_par_iter()
                .map(|y| {
                    let xs = (-bx..=bx)
                        .filter(|&t| (a * t * t + b * t * y + c * y * y).abs() <= x)
                        .map(|t| t as i64)
                        .collect();
                    (y as i64, xs)
                })
                .collect()
        }
    };
    for (y, xs) in rows {
        for t in xs {
            let v = a * t as i128 * t as i128 + b * t as i128 * y as i128 + c * y as i128 * y as i128;
            set.offer(v as i64, vec![t, y], witness_key);
        }
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "snake_case")]
pub enum Representation {
    Yes { x: i64, y: i64 },
    No,
    Unknown,
}

/// Is `m ∈ F(ℤ²)`? Exact for definite forms; indefinite forms answer `Yes`
/// when a witness lies in the box and `Unknown` otherwise.
pub fn represents(form: &BinaryQuadraticForm, m: i64, boxed: Option<u64>) -> Result<Representation> {
    let (a, b, c) = coefficients(form)?;
    let d = b * b - 4 * a * c;
    let m = m as i128;
    let shape = form.shape();
    // F(x, y) = m  iff  -F(x, y) = -m; negation leaves d unchanged
    let (a, b, m) = if shape == Shape::NegativeDefinite {
        (-a, -b, -m)
    } else {
        (a, b, m)
    };
    let ymax = match shape {
        Shape::Indefinite => {
            boxed.ok_or_else(|| Error::InvalidArgument("indefinite forms need a search box".into()))? as i128
        }
        _ => {
            if m < 0 {
                return Ok(Representation::No);
            }
            isqrt(4 * a * m / -d)
        }
    };
    let xbound = match shape {
        Shape::Indefinite => ymax,
        _ => i128::MAX,
    };
    // y in the order 0, 1, -1, 2, -2, ...
    let ys = (0..=ymax).flat_map(|y| if y == 0 { vec![0] } else { vec![y, -y] });
    for y in ys {
        // a x² + (b y) x + (c y² - m) = 0 has discriminant d y² + 4 a m
        let disc = d * y * y + 4 * a * m;
        if disc < 0 {
            continue;
        }
        let s = isqrt(disc);
        if s * s != disc {
            continue;
        }
        let mut roots: Vec<i128> = [-b * y + s, -b * y - s]
            .into_iter()
            .filter(|num| num.rem_euclid(2 * a) == 0)
            .map(|num| num.div_euclid(2 * a))
            .filter(|t| t.abs() <= xbound)
            .collect();
        roots.sort_by_key(|t| (t.abs(), *t < 0));
        if let Some(&t) = roots.first() {
            return Ok(Representation::Yes {
                x: t as i64,
                y: y as i64,
            });
        }
    }
    Ok(match shape {
        Shape::Indefinite => Representation::Unknown,
        _ => Representation::No,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::new(a, b, c).unwrap()
    }

    fn vals(s: &ValueSet) -> Vec<i64> {
        s.values().collect()
    }

    #[test]
    fn enumeration_examples() {
        let s = enumerate_values(&q(1, 0, 1), 10, None).unwrap();
        assert_eq!(vals(&s), vec![0, 1, 2, 4, 5, 8, 9, 10]);
        assert!(s.complete);
        let s = enumerate_values(&q(1, 0, 1), 0, None).unwrap();
        assert_eq!(vals(&s), vec![0]);
        let s = enumerate_values(&q(1, 0, -2), 3, Some(5)).unwrap();
        assert_eq!(vals(&s), vec![-2, -1, 0, 1, 2]);
        assert!(!s.complete);
    }

    #[test]
    fn indefinite_needs_box() {
        assert!(matches!(
            enumerate_values(&q(1, 0, -2), 3, None),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn negative_definite_has_only_zero_in_range() {
        let s = enumerate_values(&q(-1, 0, -1), 100, None).unwrap();
        assert_eq!(vals(&s), vec![0]);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_values_with(&q(1, 0, 1), 1_000_000, None, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn definite_enumeration_matches_brute_force() {
        for (a, b, c) in [(1, 0, 1), (1, 1, 1), (2, 1, 3), (1, 0, 9), (3, -2, 5), (1, 1, 6)] {
            let f = q(a, b, c);
            let x = 400;
            let s = enumerate_values(&f, x as u64, None).unwrap();
            let mut brute = std::collections::BTreeSet::new();
            for u in -60i64..=60 {
                for v in -60i64..=60 {
                    let val = a * u * u + b * u * v + c * v * v;
                    if val <= x {
                        brute.insert(val);
                    }
                }
            }
            assert_eq!(vals(&s), brute.into_iter().collect::<Vec<_>>(), "F={f}");
            for (v, w) in s.iter() {
                let w = w.unwrap();
                assert_eq!(f.eval(&w[0].into(), &w[1].into()), BigInt::from(v));
            }
        }
    }

    #[test]
    fn represents_examples() {
        let f = q(1, 0, 1);
        match represents(&f, 25, None).unwrap() {
            Representation::Yes { x, y } => assert_eq!(x * x + y * y, 25),
            other => panic!("{other:?}"),
        }
        assert_eq!(represents(&f, 3, None).unwrap(), Representation::No);
        assert_eq!(represents(&f, -1, None).unwrap(), Representation::No);
        assert_eq!(represents(&f, 0, None).unwrap(), Representation::Yes { x: 0, y: 0 });
        assert_eq!(represents(&q(1, 0, -2), 3, Some(100)).unwrap(), Representation::Unknown);
        assert_eq!(
            represents(&q(1, 0, -2), -1, Some(100)).unwrap(),
            Representation::Yes { x: 1, y: 1 }
        );
        assert_eq!(
            represents(&q(-1, 0, -1), -5, None).unwrap(),
            Representation::Yes { x: 2, y: 1 }
        );
        assert_eq!(represents(&q(-1, 0, -1), 5, None).unwrap(), Representation::No);
    }

    #[test]
    fn represents_agrees_with_enumeration() {
        for (a, b, c) in [(1, 0, 1), (2, 1, 3), (1, 0, 3)] {
            let f = q(a, b, c);
            let s = enumerate_values(&f, 300, None).unwrap();
            for m in -5..=300 {
                let r = represents(&f, m, None).unwrap();
                match r {
                    Representation::Yes { x, y } => {
                        assert!(s.contains(m));
                        assert_eq!(a * x * x + b * x * y + c * y * y, m);
                    }
                    Representation::No => assert!(!s.contains(m)),
                    Representation::Unknown => panic!("definite forms are decided"),
                }
            }
        }
    }
}
