use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{fundamental_discriminant, is_square, DiscriminantDecomposition};
use crate::error::{Error, Result};

/// An irreducible integral binary quadratic form `ax² + bxy + cy²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormRepr", into = "FormRepr")]
pub struct BinaryQuadraticForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl BinaryQuadraticForm {
    /// Rejects forms whose discriminant is a perfect square (including zero).
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        let d = &b * &b - BigInt::from(4u8) * &a * &c;
        if is_square(&d) {
            return Err(Error::ReducibleForm { d });
        }
        Ok(BinaryQuadraticForm { a, b, c })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4u8) * &self.a * &self.c
    }

    /// `gcd(a, b, c)`.
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    pub fn shape(&self) -> Shape {
        if self.discriminant().is_positive() {
            Shape::Indefinite
        } else if self.a.is_positive() {
            Shape::PositiveDefinite
        } else {
            Shape::NegativeDefinite
        }
    }

    /// Coefficients as `i64`, when they fit.
    pub(crate) fn small_coefficients(&self) -> Option<(i64, i64, i64)> {
        Some((self.a.to_i64()?, self.b.to_i64()?, self.c.to_i64()?))
    }
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (coef, mono) in [(&self.a, "x^2"), (&self.b, "xy"), (&self.c, "y^2")] {
            if coef.is_zero() {
                continue;
            }
            let sign = if coef.is_negative() { "-" } else { "+" };
            if first {
                if coef.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = coef.abs();
            if !abs.is_one() {
                write!(f, "{abs}")?;
            }
            write!(f, "{mono}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses the comma triple `"a,b,c"`.
impl FromStr for BinaryQuadraticForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected \"a,b,c\", got {s:?}")));
        }
        let mut coef = parts.iter().map(|p| {
            p.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad coefficient {p:?}")))
        });
        let a = coef.next().unwrap()?;
        let b = coef.next().unwrap()?;
        let c = coef.next().unwrap()?;
        BinaryQuadraticForm::new(a, b, c)
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    #[serde(with = "crate::serde_util::bigint")]
    a: BigInt,
    #[serde(with = "crate::serde_util::bigint")]
    b: BigInt,
    #[serde(with = "crate::serde_util::bigint")]
    c: BigInt,
}

impl TryFrom<FormRepr> for BinaryQuadraticForm {
    type Error = Error;

    fn try_from(r: FormRepr) -> Result<Self> {
        BinaryQuadraticForm::new(r.a, r.b, r.c)
    }
}

impl From<BinaryQuadraticForm> for FormRepr {
    fn from(f: BinaryQuadraticForm) -> Self {
        FormRepr { a: f.a, b: f.b, c: f.c }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
}

/// Derived discriminant data of a form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormAnalysis {
    pub form: BinaryQuadraticForm,
    #[serde(with = "crate::serde_util::bigint")]
    pub d: BigInt,
    pub decomposition: DiscriminantDecomposition,
    pub primitive: bool,
    pub shape: Shape,
}

impl FormAnalysis {
    pub fn delta(&self) -> &BigInt {
        &self.decomposition.delta
    }

    pub fn conductor(&self) -> &BigInt {
        &self.decomposition.f
    }
}

pub fn analyze(form: &BinaryQuadraticForm) -> Result<FormAnalysis> {
    let d = form.discriminant();
    let decomposition = fundamental_discriminant(&d)?;
    Ok(FormAnalysis {
        form: form.clone(),
        primitive: form.content().is_one(),
        shape: form.shape(),
        d,
        decomposition,
    })
}

/// `(±F)/gcd(a, b, c)`, primitive and not negative definite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Normalized {
    pub form: BinaryQuadraticForm,
    #[serde(with = "crate::serde_util::bigint")]
    pub scale: BigInt,
    pub negated: bool,
}

pub fn normalize(form: &BinaryQuadraticForm) -> Normalized {
    let g = form.content();
    let negated = form.shape() == Shape::NegativeDefinite;
    let s = if negated { -&g } else { g.clone() };
    Normalized {
        form: BinaryQuadraticForm {
            a: &form.a / &s,
            b: &form.b / &s,
            c: &form.c / &s,
        },
        scale: g,
        negated,
    }
}
