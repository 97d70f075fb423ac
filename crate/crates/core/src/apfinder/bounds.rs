//! Upper bounds on the length `k` of a represented progression with
//! difference `g`. Logarithms are natural. Values too large for `f64` come
//! back as `+∞`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Admissible exponent for binary quadratic forms.
pub const L_QF: f64 = 7.999;
/// Admissible exponent for norm forms.
pub const L_NF: f64 = 694.0;

/// Natural log of a positive integer, exact in the leading bits even beyond
/// the `f64` range.
fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln g` for a positive difference of any size.
pub fn ln_difference(g: &BigInt) -> Result<f64> {
    if g.is_positive() {
        Ok(ln_big(g))
    } else {
        Err(Error::InvalidArgument(format!("difference {g} must be positive")))
    }
}

fn check_ln_g(ln_g: f64) -> Result<()> {
    if ln_g >= 0.0 && ln_g.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "ln g must be finite and nonnegative, got {ln_g}"
        )))
    }
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{name} must be positive and finite, got {x}"
        )))
    }
}

/// `Σ_{p ∈ 𝒫_S, p ≤ X} ln p ≥ X/C₁` for `X ≥ C₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityHypothesis {
    pub c1: f64,
    pub c2: f64,
}

/// `k ≤ 2·max(C₁ ln g, C₂)`.
pub fn bound_from_density(params: &DensityHypothesis, g: &BigInt) -> Result<f64> {
    bound_from_density_ln(params, ln_difference(g)?)
}

/// [`bound_from_density`] evaluated at a given `ln g`.
pub fn bound_from_density_ln(params: &DensityHypothesis, ln_g: f64) -> Result<f64> {
    check_positive("C1", params.c1)?;
    check_positive("C2", params.c2)?;
    check_ln_g(ln_g)?;
    Ok(2.0 * (params.c1 * ln_g).max(params.c2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticBound {
    pub c: f64,
    pub l: f64,
    /// Divide the `√|Δ|` term by `ln |Δ|` (needs `|Δ| ≥ 3`).
    #[serde(default)]
    pub log_improved: bool,
}

impl QuadraticBound {
    pub fn with_constant(c: f64) -> Self {
        QuadraticBound {
            c,
            l: L_QF,
            log_improved: false,
        }
    }
}

/// `C·(√|Δ| ln g + |Δ|^L)`, or `C·(√|Δ|/ln|Δ| · ln g + |Δ|^L)`.
pub fn bound_qf(params: &QuadraticBound, delta: &BigInt, g: &BigInt) -> Result<f64> {
    bound_qf_ln(params, delta, ln_difference(g)?)
}

/// [`bound_qf`] evaluated at a given `ln g`.
pub fn bound_qf_ln(params: &QuadraticBound, delta: &BigInt, ln_g: f64) -> Result<f64> {
    check_positive("C", params.c)?;
    check_positive("L", params.l)?;
    check_ln_g(ln_g)?;
    let a = delta.abs();
    if a.bits() == 0 {
        return Err(Error::InvalidArgument("discriminant must be nonzero".into()));
    }
    let ln_a = ln_big(&a);
    let mut slope = (0.5 * ln_a).exp();
    if params.log_improved {
        if a < BigInt::from(3) {
            return Err(Error::InvalidArgument(
                "the logarithmic variant needs |Delta| >= 3".into(),
            ));
        }
        slope /= ln_a;
    }
    Ok(params.c * (slope * ln_g + (params.l * ln_a).exp()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormFormBound {
    pub cn: f64,
    pub l: f64,
    /// `|Δ|` of the normal closure, supplied by the caller.
    pub delta_tilde: u64,
}

impl NormFormBound {
    pub fn with_constant(cn: f64, delta_tilde: u64) -> Self {
        NormFormBound {
            cn,
            l: L_NF,
            delta_tilde,
        }
    }
}

/// `C_n·(Δ̃⁵ ln g + Δ̃^L)`.
pub fn bound_nf(params: &NormFormBound, g: &BigInt) -> Result<f64> {
    bound_nf_ln(params, ln_difference(g)?)
}

/// [`bound_nf`] evaluated at a given `ln g`.
pub fn bound_nf_ln(params: &NormFormBound, ln_g: f64) -> Result<f64> {
    check_positive("Cn", params.cn)?;
    check_positive("L", params.l)?;
    check_ln_g(ln_g)?;
    if params.delta_tilde == 0 {
        return Err(Error::InvalidArgument("DeltaTilde must be positive".into()));
    }
    let dt = params.delta_tilde as f64;
    Ok(params.cn * (dt.powi(5) * ln_g + dt.powf(params.l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::serde_util::round_sig;

    fn near(x: f64) -> BigInt {
        BigInt::from(x.round() as u64)
    }

    fn same12(a: f64, b: f64) -> bool {
        round_sig(a) == round_sig(b)
    }

    #[test]
    fn density_examples() {
        let p = DensityHypothesis { c1: 10.0, c2: 100.0 };
        let g = near(20f64.exp());
        let v = bound_from_density(&p, &g).unwrap();
        assert!((v - 400.0).abs() < 1e-6, "{v}");
        assert_eq!(bound_from_density(&p, &BigInt::from(1)).unwrap(), 200.0);
        let p1 = DensityHypothesis { c1: 1.0, c2: 1.0 };
        assert_eq!(bound_from_density(&p1, &BigInt::from(1)).unwrap(), 2.0);
        let v = bound_from_density(&p1, &BigInt::from(3)).unwrap();
        assert!(same12(v, 2.0 * 3f64.ln()));
    }

    #[test]
    fn quadratic_examples() {
        let one = BigInt::from(1);
        let v = bound_qf(&QuadraticBound::with_constant(1.0), &BigInt::from(-4), &one).unwrap();
        assert!(same12(v, 4f64.powf(7.999)));
        let p = QuadraticBound {
            c: 1.0,
            l: 1.0,
            log_improved: false,
        };
        // ln g = 2 exactly is out of reach for integer g; compare the formula instead
        let g = near(2f64.exp());
        let v = bound_qf(&p, &BigInt::from(-4), &g).unwrap();
        assert!(same12(v, 2.0 * 7f64.ln() + 4.0));
        let p = QuadraticBound {
            c: 2.0,
            l: 1.0,
            log_improved: false,
        };
        assert!(same12(bound_qf(&p, &BigInt::from(5), &one).unwrap(), 10.0));
        let p = QuadraticBound {
            c: 1.0,
            l: 1.0,
            log_improved: true,
        };
        let v = bound_qf(&p, &BigInt::from(5), &BigInt::from(10)).unwrap();
        assert!(same12(v, 5f64.sqrt() / 5f64.ln() * 10f64.ln() + 5.0));
        assert!(bound_qf(&p, &BigInt::from(1), &one).is_err());
    }

    #[test]
    fn norm_form_examples() {
        let p = NormFormBound::with_constant(1.0, 1);
        let v = bound_nf(&p, &BigInt::from(3)).unwrap();
        assert!(same12(v, 3f64.ln() + 1.0));
        let p = NormFormBound {
            cn: 1.0,
            l: 5.0,
            delta_tilde: 2,
        };
        assert_eq!(bound_nf(&p, &BigInt::from(1)).unwrap(), 32.0);
        let p = NormFormBound {
            cn: 3.0,
            l: 5.0,
            delta_tilde: 1,
        };
        let v = bound_nf(&p, &BigInt::from(20)).unwrap();
        assert!(same12(v, 3.0 * (20f64.ln() + 1.0)));
        assert_eq!(
            bound_nf(&NormFormBound::with_constant(1.0, 3), &BigInt::from(2)).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn examples_at_exact_logarithms() {
        let p1 = DensityHypothesis { c1: 1.0, c2: 1.0 };
        assert_eq!(bound_from_density_ln(&p1, 1.0).unwrap(), 2.0);
        let p = QuadraticBound {
            c: 1.0,
            l: 1.0,
            log_improved: false,
        };
        assert_eq!(bound_qf_ln(&p, &BigInt::from(-4), 2.0).unwrap(), 8.0);
        assert_eq!(bound_nf_ln(&NormFormBound::with_constant(1.0, 1), 1.0).unwrap(), 2.0);
        let p = NormFormBound {
            cn: 3.0,
            l: 5.0,
            delta_tilde: 1,
        };
        assert_eq!(bound_nf_ln(&p, 3.0).unwrap(), 12.0);
        assert!(bound_nf_ln(&p, -1.0).is_err());
    }

    #[test]
    fn huge_differences() {
        let g = BigInt::from(1) << 5000u32;
        let v = bound_from_density(&DensityHypothesis { c1: 1.0, c2: 1.0 }, &g).unwrap();
        assert!(same12(v, 2.0 * 5000.0 * std::f64::consts::LN_2));
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = BigInt::from(5);
        assert!(bound_from_density(&DensityHypothesis { c1: 0.0, c2: 1.0 }, &g).is_err());
        assert!(bound_from_density(&DensityHypothesis { c1: 1.0, c2: 1.0 }, &BigInt::from(0)).is_err());
        assert!(bound_nf(
            &NormFormBound {
                cn: 1.0,
                l: 5.0,
                delta_tilde: 0
            },
            &g
        )
        .is_err());
    }
}
