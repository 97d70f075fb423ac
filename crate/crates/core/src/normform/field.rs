use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, small_primes};
use crate::error::{Error, Result};

use super::fp_poly;
use super::lattice::ModuleLattice;
use super::linalg::{det, from_columns, identity, inverse, is_integral, mat_vec, q, QMat};

/// Cap on candidate quadratic factors tried by the irreducibility test.
const QUADRATIC_SEARCH_BUDGET: u128 = 100_000_000;

/// A number field `K = ℚ(θ)` with `h(θ) = 0`, together with a user-supplied
/// integral basis of `O_K` in power-basis coordinates `1, θ, …, θⁿ⁻¹`.
///
/// Validation checks that `h` is monic and irreducible, that the basis
/// spans a ring containing `ℤ[θ]`, and derives `disc(h)`, the index
/// `[O_K : ℤ[θ]]` and `disc(K)`. Maximality of the supplied order is taken
/// on trust.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FieldRepr", into = "FieldRepr")]
pub struct NumberFieldDescription {
    minpoly: Vec<BigInt>,
    integral_basis: Vec<Vec<BigRational>>,
    poly_disc: BigInt,
    index: BigInt,
    field_disc: BigInt,
    basis_inverse: QMat,
}

#[derive(Serialize, Deserialize)]
struct FieldRepr {
    #[serde(with = "crate::serde_util::bigint_vec")]
    minpoly: Vec<BigInt>,
    #[serde(with = "crate::serde_util::rational_matrix")]
    integral_basis: Vec<Vec<BigRational>>,
    #[serde(with = "crate::serde_util::bigint")]
    poly_disc: BigInt,
    #[serde(with = "crate::serde_util::bigint")]
    index: BigInt,
    #[serde(with = "crate::serde_util::bigint")]
    field_disc: BigInt,
}

impl From<NumberFieldDescription> for FieldRepr {
    fn from(f: NumberFieldDescription) -> Self {
        FieldRepr {
            minpoly: f.minpoly,
            integral_basis: f.integral_basis,
            poly_disc: f.poly_disc,
            index: f.index,
            field_disc: f.field_disc,
        }
    }
}

impl TryFrom<FieldRepr> for NumberFieldDescription {
    type Error = Error;

    fn try_from(r: FieldRepr) -> Result<Self> {
        let f = NumberFieldDescription::new(r.minpoly, Some(r.integral_basis))?;
        if f.poly_disc != r.poly_disc || f.index != r.index || f.field_disc != r.field_disc {
            return Err(Error::InvalidField("stored discriminant data is inconsistent".into()));
        }
        Ok(f)
    }
}

impl NumberFieldDescription {
    /// `minpoly` lists the coefficients of `h`, constant term first.
    /// `None` for the basis means the power basis.
    pub fn new(minpoly: Vec<BigInt>, integral_basis: Option<Vec<Vec<BigRational>>>) -> Result<Self> {
        let n = minpoly.len().saturating_sub(1);
        if n < 2 {
            return Err(Error::InvalidField(
                "minimal polynomial must have degree at least 2".into(),
            ));
        }
        if !minpoly[n].is_one() {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        check_irreducible(&minpoly)?;
        let basis = integral_basis.unwrap_or_else(|| identity(n));
        if basis.len() != n || basis.iter().any(|b| b.len() != n) {
            return Err(Error::InvalidField(format!(
                "integral basis must be {n} vectors of length {n}"
            )));
        }
        let b = from_columns(&basis);
        let basis_inverse =
            inverse(&b).ok_or_else(|| Error::InvalidField("integral basis is linearly dependent".into()))?;
        let mut field = NumberFieldDescription {
            minpoly,
            integral_basis: basis,
            poly_disc: BigInt::zero(),
            index: BigInt::one(),
            field_disc: BigInt::zero(),
            basis_inverse,
        };
        if field.basis_inverse.iter().flatten().any(|x| !x.denom().is_one()) {
            return Err(Error::InvalidField("integral basis does not contain Z[theta]".into()));
        }
        for i in 0..n {
            for j in i..n {
                let prod = field.mul(&field.integral_basis[i], &field.integral_basis[j]);
                if !is_integral(&field.to_integral_coords(&prod)) {
                    return Err(Error::InvalidField(
                        "integral basis is not closed under multiplication".into(),
                    ));
                }
            }
        }
        let power: Vec<Vec<BigRational>> = identity(n);
        let poly_disc = field.trace_form_det(&power);
        if poly_disc.is_zero() {
            return Err(Error::InvalidField("minimal polynomial is not separable".into()));
        }
        let index = det(&field.basis_inverse).abs();
        let field_disc = field.trace_form_det(&field.integral_basis);
        if !index.denom().is_one() || !field_disc.denom().is_one() {
            return Err(Error::InvalidField("discriminant data is not integral".into()));
        }
        field.poly_disc = poly_disc.to_integer();
        field.index = index.to_integer();
        field.field_disc = field_disc.to_integer();
        debug_assert_eq!(&field.index * &field.index * &field.field_disc, field.poly_disc);
        Ok(field)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn integral_basis(&self) -> &[Vec<BigRational>] {
        &self.integral_basis
    }

    /// `disc(h)`.
    pub fn poly_disc(&self) -> &BigInt {
        &self.poly_disc
    }

    /// `[O_K : ℤ[θ]]`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    /// `disc(K) = disc(h) / index²`.
    pub fn field_disc(&self) -> &BigInt {
        &self.field_disc
    }

    pub fn one(&self) -> Vec<BigRational> {
        let mut v = vec![q(0); self.degree()];
        v[0] = q(1);
        v
    }

    fn times_theta(&self, v: &[BigRational]) -> Vec<BigRational> {
        let n = self.degree();
        let top = v[n - 1].clone();
        let mut out = Vec::with_capacity(n);
        out.push(q(0));
        out.extend_from_slice(&v[..n - 1]);
        if !top.is_zero() {
            for (o, h) in out.iter_mut().zip(&self.minpoly) {
                *o -= &top * BigRational::from_integer(h.clone());
            }
        }
        out
    }

    /// Matrix of `w ↦ v·w` in the power basis.
    pub fn mult_matrix(&self, v: &[BigRational]) -> QMat {
        let n = self.degree();
        let mut cols = Vec::with_capacity(n);
        let mut c = v.to_vec();
        for _ in 0..n {
            let next = self.times_theta(&c);
            cols.push(c);
            c = next;
        }
        from_columns(&cols)
    }

    pub fn mul(&self, u: &[BigRational], v: &[BigRational]) -> Vec<BigRational> {
        mat_vec(&self.mult_matrix(v), u)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn element_inverse(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let inv = inverse(&self.mult_matrix(v))?;
        Some(mat_vec(&inv, &self.one()))
    }

    /// Field norm `N_{K/ℚ}(v)`.
    pub fn element_norm(&self, v: &[BigRational]) -> BigRational {
        det(&self.mult_matrix(v))
    }

    pub fn trace(&self, v: &[BigRational]) -> BigRational {
        let m = self.mult_matrix(v);
        (0..self.degree()).fold(q(0), |acc, i| acc + &m[i][i])
    }

    fn trace_form_det(&self, basis: &[Vec<BigRational>]) -> BigRational {
        let n = basis.len();
        let mut m = vec![vec![q(0); n]; n];
        for i in 0..n {
            for j in i..n {
                let t = self.trace(&self.mul(&basis[i], &basis[j]));
                m[j][i] = t.clone();
                m[i][j] = t;
            }
        }
        det(&m)
    }

    /// Coordinates of a power-basis vector in the integral basis.
    pub fn to_integral_coords(&self, v: &[BigRational]) -> Vec<BigRational> {
        mat_vec(&self.basis_inverse, v)
    }

    pub fn ring_of_integers(&self) -> ModuleLattice {
        ModuleLattice::from_generators(&self.integral_basis).expect("validated basis has full rank")
    }

    /// Does `h` have a root modulo `p`?
    pub fn has_root_mod(&self, p: u64) -> bool {
        fp_poly::has_root(&fp_poly::reduce(&self.minpoly, p), p)
    }
}

fn eval_int(h: &[BigInt], x: &BigInt) -> BigInt {
    h.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Does the monic quadratic `t² + u·t + v` divide `h` over ℤ?
fn divisible_by_quadratic(h: &[BigInt], u: &BigInt, v: &BigInt) -> bool {
    let mut r: Vec<BigInt> = h.to_vec();
    for top in (2..r.len()).rev() {
        let c = r[top].clone();
        if c.is_zero() {
            continue;
        }
        r[top - 1] -= &c * u;
        r[top - 2] -= &c * v;
        r[top] = BigInt::zero();
    }
    r[0].is_zero() && r[1].is_zero()
}

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let f = factorize(n)?;
    let mut divs = vec![BigInt::one()];
    for pp in &f.factors {
        let mut next = Vec::with_capacity(divs.len() * (pp.exponent as usize + 1));
        for d in &divs {
            let mut m = d.clone();
            for _ in 0..=pp.exponent {
                next.push(m.clone());
                m *= &pp.prime;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Irreducibility of a monic integer polynomial.
///
/// First looks for a prime where `h` stays irreducible. Failing that, a
/// polynomial of degree at most 5 is reducible iff it has an integer root or
/// a monic integer quadratic factor, and both are searched for exhaustively
/// within the Cauchy root bound. Higher degrees without an irreducible
/// reduction are rejected as undecided.
fn check_irreducible(h: &[BigInt]) -> Result<()> {
    let n = h.len() - 1;
    if h[0].is_zero() {
        return Err(Error::InvalidField("minimal polynomial is divisible by t".into()));
    }
    if small_primes()
        .iter()
        .take_while(|&&p| p < 200)
        .any(|&p| fp_poly::is_irreducible(&fp_poly::reduce(h, p), p))
    {
        return Ok(());
    }
    let c0 = h[0].abs();
    let divisors = positive_divisors(&c0)?;
    for d in &divisors {
        for r in [d.clone(), -d] {
            if eval_int(h, &r).is_zero() {
                return Err(Error::InvalidField(format!(
                    "minimal polynomial has the rational root {r}"
                )));
            }
        }
    }
    if n <= 3 {
        return Ok(());
    }
    if n > 5 {
        return Err(Error::InvalidField(format!(
            "could not establish irreducibility of a degree-{n} polynomial"
        )));
    }
    // roots have modulus below R, so a monic quadratic factor t² + ut + v has |u| ≤ 2R, |v| ≤ R²
    let r: BigInt = h[..n].iter().map(|c| c.abs()).max().unwrap() + 1;
    let r_sq = &r * &r;
    let vs: Vec<&BigInt> = divisors.iter().filter(|d| **d <= r_sq).collect();
    let work = (vs.len() as u128).saturating_mul(r.to_u128().map_or(u128::MAX, |r| 4 * r + 1));
    if work > QUADRATIC_SEARCH_BUDGET {
        return Err(Error::budget("quadratic factor search", work, QUADRATIC_SEARCH_BUDGET));
    }
    let two_r = (&r * 2u32).to_i64().unwrap();
    for v in vs {
        for v in [v.clone(), -v] {
            for u in -two_r..=two_r {
                if divisible_by_quadratic(h, &BigInt::from(u), &v) {
                    return Err(Error::InvalidField(format!(
                        "minimal polynomial has the factor t^2 + ({u})t + ({v})"
                    )));
                }
            }
        }
    }
    Ok(())
}

impl NumberFieldDescription {
    /// Parse `"c0,c1,…,cn"` (constant term first).
    pub fn parse_minpoly(s: &str) -> Result<Vec<BigInt>> {
        s.split(',')
            .map(|t| {
                let t = t.trim().replace('\u{2212}', "-");
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad polynomial coefficient {t:?}")))
            })
            .collect()
    }
}

/// Parse semicolon-separated rational vectors such as `"1,0,0; 0,1/2,0"`.
pub fn parse_vectors(s: &str) -> Result<Vec<Vec<BigRational>>> {
    s.split(';')
        .filter(|chunk| !chunk.trim().is_empty())
        .map(|chunk| {
            chunk
                .split(',')
                .map(|t| crate::serde_util::parse_rational(&t.replace('\u{2212}', "-")).map_err(Error::Parse))
                .collect()
        })
        .collect()
}

/// `p`-adic valuation of a nonzero integer.
pub(crate) fn valuation(n: &BigInt, p: u64) -> u32 {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(&pb) {
        n /= &pb;
        v += 1;
    }
    v
}
