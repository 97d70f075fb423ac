use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::field::NumberFieldDescription;
use super::ideal::ok_module;
use super::lattice::ModuleLattice;
use super::linalg::{common_denominator, q};

/// Largest degree expanded symbolically by default.
pub const NORM_FORM_MAX_DEGREE: usize = 5;

type Terms = BTreeMap<Vec<u32>, BigRational>;

/// A homogeneous form in `n` variables with rational coefficients, together
/// with the norm `N(O_K M)` it was divided by.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct NormFormPolynomial {
    nvars: usize,
    degree: u32,
    coefficients: Terms,
    scaling_norm: BigRational,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: Vec<u32>,
    #[serde(with = "crate::serde_util::rational")]
    coefficient: BigRational,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    degree: u32,
    terms: Vec<TermRepr>,
    #[serde(with = "crate::serde_util::rational")]
    scaling_norm: BigRational,
    #[serde(default, skip_deserializing)]
    display: String,
}

impl From<NormFormPolynomial> for PolyRepr {
    fn from(p: NormFormPolynomial) -> Self {
        let display = p.to_string();
        PolyRepr {
            nvars: p.nvars,
            degree: p.degree,
            terms: p
                .coefficients
                .into_iter()
                .rev()
                .map(|(exponents, coefficient)| TermRepr { exponents, coefficient })
                .collect(),
            scaling_norm: p.scaling_norm,
            display,
        }
    }
}

impl TryFrom<PolyRepr> for NormFormPolynomial {
    type Error = Error;

    fn try_from(r: PolyRepr) -> Result<Self> {
        let f = NormFormPolynomial::new(
            r.nvars,
            r.terms.into_iter().map(|t| (t.exponents, t.coefficient)).collect(),
            r.scaling_norm,
        )?;
        if f.degree != r.degree {
            return Err(Error::InvalidArgument("stated degree does not match the terms".into()));
        }
        Ok(f)
    }
}

impl NormFormPolynomial {
    /// Build from explicit terms; zero coefficients are dropped and the
    /// remaining terms must share one total degree.
    pub fn new(nvars: usize, terms: Vec<(Vec<u32>, BigRational)>, scaling_norm: BigRational) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidArgument("a form needs at least one variable".into()));
        }
        if !scaling_norm.is_positive() {
            return Err(Error::InvalidArgument("scaling norm must be positive".into()));
        }
        let mut coefficients = Terms::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector {e:?} has the wrong length"
                )));
            }
            *coefficients.entry(e).or_insert_with(BigRational::zero) += c;
        }
        coefficients.retain(|_, c| !c.is_zero());
        let mut degrees = coefficients.keys().map(|e| e.iter().sum::<u32>());
        let degree = degrees.next().unwrap_or(0);
        if degrees.any(|d| d != degree) {
            return Err(Error::InvalidArgument("form is not homogeneous".into()));
        }
        Ok(NormFormPolynomial {
            nvars,
            degree,
            coefficients,
            scaling_norm,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficients of `F` itself (already divided by the scaling norm).
    pub fn coefficients(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.coefficients
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.coefficients
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scaling_norm(&self) -> &BigRational {
        &self.scaling_norm
    }

    pub fn eval(&self, x: &[BigInt]) -> BigRational {
        assert_eq!(x.len(), self.nvars, "wrong number of arguments");
        self.coefficients.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let mono = x.iter().zip(e).fold(BigInt::one(), |m, (xi, &ei)| {
                m * num_traits::pow(xi.clone(), ei as usize)
            });
            acc + c * BigRational::from_integer(mono)
        })
    }

    pub fn eval_i64(&self, x: &[i64]) -> BigRational {
        let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.eval(&x)
    }

    /// `(D, G)` with `G = D·F` integral and `D` minimal.
    pub fn integer_scaled(&self) -> (BigInt, Vec<(Vec<u32>, BigInt)>) {
        let d = common_denominator(self.coefficients.values());
        let g = self
            .coefficients
            .iter()
            .map(|(e, c)| (e.clone(), (c * BigRational::from_integer(d.clone())).to_integer()))
            .collect();
        (d, g)
    }
}

fn var_name(i: usize, n: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

impl fmt::Display for NormFormPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coefficients.iter().rev().enumerate() {
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| match p {
                    1 => var_name(i, self.nvars),
                    _ => format!("{}^{p}", var_name(i, self.nvars)),
                })
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match k {
                0 if sign == "-" => write!(f, "-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}{mono}")?;
            } else {
                write!(f, "({mag}){mono}")?;
            }
        }
        Ok(())
    }
}

fn poly_mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_add_assign(acc: &mut Terms, other: &Terms, negate: bool) {
    for (e, c) in other {
        let slot = acc.entry(e.clone()).or_insert_with(BigRational::zero);
        if negate {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    acc.retain(|_, c| !c.is_zero());
}

/// Determinant of a square matrix of polynomials, by dynamic programming over
/// the set of columns already used (Laplace expansion along rows).
fn symbolic_det(m: &[Vec<Terms>], nvars: usize) -> Terms {
    let n = m.len();
    let mut dp: Vec<Option<Terms>> = vec![None; 1 << n];
    let mut one = Terms::new();
    one.insert(vec![0; nvars], q(1));
    dp[0] = Some(one);
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            dp[mask] = Some(cur);
            continue;
        }
        for col in 0..n {
            if mask & (1 << col) != 0 || m[row][col].is_empty() {
                continue;
            }
            // sign of placing this column after the columns already used
            let negate = (mask >> col).count_ones() % 2 == 1;
            let term = poly_mul(&cur, &m[row][col]);
            let slot = dp[mask | (1 << col)].get_or_insert_with(Terms::new);
            poly_add_assign(slot, &term, negate);
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_default()
}

/// `N(x₁β₁ + ⋯ + xₙβₙ) / N(O_K M)` for the HNF basis `β` of `M`.
pub fn norm_form(field: &NumberFieldDescription, m: &ModuleLattice) -> Result<NormFormPolynomial> {
    norm_form_for_basis_with(field, &m.basis(), NORM_FORM_MAX_DEGREE)
}

/// As [`norm_form`], in the variables of an explicit basis of `M`.
pub fn norm_form_for_basis(field: &NumberFieldDescription, basis: &[Vec<BigRational>]) -> Result<NormFormPolynomial> {
    norm_form_for_basis_with(field, basis, NORM_FORM_MAX_DEGREE)
}

pub fn norm_form_for_basis_with(
    field: &NumberFieldDescription,
    basis: &[Vec<BigRational>],
    max_degree: usize,
) -> Result<NormFormPolynomial> {
    let n = field.degree();
    if n > max_degree {
        return Err(Error::budget("symbolic norm form degree", n, max_degree));
    }
    if basis.len() != n || basis.iter().any(|b| b.len() != n) {
        return Err(Error::InvalidModule(format!(
            "a basis needs exactly {n} vectors of length {n}"
        )));
    }
    let lattice = ModuleLattice::from_generators(basis)?;
    if lattice.covolume() != super::linalg::det(&super::linalg::from_columns(basis)).abs() {
        return Err(Error::RankDeficient);
    }
    let (_, scaling_norm) = ok_module(field, &lattice)?;
    let mats: Vec<_> = basis.iter().map(|b| field.mult_matrix(b)).collect();
    let entries: Vec<Vec<Terms>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut t = Terms::new();
                    for (i, mat) in mats.iter().enumerate() {
                        if !mat[r][c].is_zero() {
                            let mut e = vec![0u32; n];
                            e[i] = 1;
                            t.insert(e, mat[r][c].clone());
                        }
                    }
                    t
                })
                .collect()
        })
        .collect();
    let det = symbolic_det(&entries, n);
    let terms = det.into_iter().map(|(e, c)| (e, c / &scaling_norm)).collect();
    NormFormPolynomial::new(n, terms, scaling_norm)
}
