//! Dense exact linear algebra over ℚ. Matrices are row-major.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QMat = Vec<Vec<BigRational>>;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn identity(n: usize) -> QMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect())
        .collect()
}

pub fn transpose(m: &QMat) -> QMat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(cols: &[Vec<BigRational>]) -> QMat {
    transpose(&cols.to_vec())
}

pub fn mat_vec(m: &QMat, v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(q(0), |acc, (a, b)| acc + a * b))
        .collect()
}

#[cfg(test)]
pub fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let bt = transpose(b);
    a.iter()
        .map(|row| {
            bt.iter()
                .map(|col| row.iter().zip(col).fold(q(0), |acc, (x, y)| acc + x * y))
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination with exact pivots.
pub fn det(m: &QMat) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = q(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return q(0);
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let pivot = a[col].clone();
        d *= &pivot[col];
        for row in a.iter_mut().skip(col + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= &f * y;
            }
        }
    }
    d
}

/// Inverse by Gauss–Jordan; `None` when singular.
pub fn inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn is_integral(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.denom().is_one())
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(entries: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    entries
        .into_iter()
        .fold(BigInt::one(), |l, x| num_integer::lcm(l, x.denom().clone()))
}
