use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::linalg::{common_denominator, from_columns, inverse, transpose};

/// A full-rank lattice in ℚⁿ, stored as `H / denom` with `H` an integer
/// matrix in Hermite normal form.
///
/// Columns of `H` are the basis vectors. `H` is upper triangular with a
/// positive diagonal and every entry right of a pivot reduced into
/// `[0, pivot)`. `denom` is the least positive integer that makes the lattice
/// integral, so the representation is canonical and `==` is lattice equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleLattice {
    #[serde(with = "crate::serde_util::bigint")]
    denom: BigInt,
    /// `hnf[j]` is the j-th basis column.
    #[serde(with = "hnf_serde")]
    hnf: Vec<Vec<BigInt>>,
}

mod hnf_serde {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = m.iter().map(|c| c.iter().map(|x| x.to_string()).collect()).collect();
        serde::Serialize::serialize(&strs, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let strs = Vec::<Vec<String>>::deserialize(d)?;
        strs.iter()
            .map(|c| c.iter().map(|x| x.parse().map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

/// Column-style Hermite normal form of the integer lattice spanned by `gens`.
pub fn hermite_normal_form(n: usize, gens: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let mut work: Vec<Vec<BigInt>> = gens
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut basis: Vec<Vec<BigInt>> = vec![Vec::new(); n];
    for row in (0..n).rev() {
        // gcd-combine every working vector's entry in `row` into one pivot
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(work.len());
        for v in work.drain(..) {
            if v[row].is_zero() {
                rest.push(v);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(v),
                Some(p) => {
                    let e = p[row].extended_gcd(&v[row]);
                    let (pa, va) = (&p[row] / &e.gcd, &v[row] / &e.gcd);
                    let new_p: Vec<BigInt> = p.iter().zip(&v).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let other: Vec<BigInt> = p.iter().zip(&v).map(|(x, y)| &va * x - &pa * y).collect();
                    debug_assert!(other[row].is_zero());
                    if other.iter().any(|x| !x.is_zero()) {
                        rest.push(other);
                    }
                    pivot = Some(new_p);
                }
            }
        }
        let Some(mut p) = pivot else {
            return Err(Error::RankDeficient);
        };
        if p[row].is_negative() {
            p.iter_mut().for_each(|x| *x = -&*x);
        }
        basis[row] = p;
        work = rest;
    }
    if work.iter().any(|v| v.iter().any(|x| !x.is_zero())) {
        // vectors left over after n pivots must vanish for a rank-n span
        return Err(Error::RankDeficient);
    }
    for j in 0..n {
        for i in (0..j).rev() {
            let q = basis[j][i].div_floor(&basis[i][i]);
            if !q.is_zero() {
                let bi = basis[i].clone();
                for (x, y) in basis[j].iter_mut().zip(&bi) {
                    *x -= &q * y;
                }
            }
        }
    }
    Ok(basis)
}

impl ModuleLattice {
    /// Canonical HNF basis of the lattice generated by rational vectors.
    pub fn from_generators(gens: &[Vec<BigRational>]) -> Result<Self> {
        let n = gens.first().map(Vec::len).ok_or(Error::RankDeficient)?;
        if n == 0 || gens.iter().any(|g| g.len() != n) {
            return Err(Error::InvalidModule("generators must share one positive length".into()));
        }
        let denom = common_denominator(gens.iter().flatten());
        let ints: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|x| (x * &denom).to_integer()).collect())
            .collect();
        let hnf = hermite_normal_form(n, &ints)?;
        Ok(Self::canonical(denom, hnf))
    }

    fn canonical(denom: BigInt, mut hnf: Vec<Vec<BigInt>>) -> Self {
        let g = hnf.iter().flatten().fold(denom.clone(), |g, x| g.gcd(x));
        if g.is_one() {
            return ModuleLattice { denom, hnf };
        }
        hnf.iter_mut().flatten().for_each(|x| *x /= &g);
        ModuleLattice { denom: denom / g, hnf }
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// Integer HNF columns; the lattice is these divided by [`Self::denominator`].
    pub fn hnf_columns(&self) -> &[Vec<BigInt>] {
        &self.hnf
    }

    /// Basis columns as rational vectors.
    pub fn basis(&self) -> Vec<Vec<BigRational>> {
        self.hnf
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| BigRational::new(x.clone(), self.denom.clone()))
                    .collect()
            })
            .collect()
    }

    /// `|det|` of the basis: the index of the lattice in ℤⁿ when integral.
    pub fn covolume(&self) -> BigRational {
        let diag = (0..self.rank()).fold(BigInt::one(), |acc, i| acc * &self.hnf[i][i]);
        BigRational::new(diag, num_traits::pow(self.denom.clone(), self.rank()))
    }

    /// Coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        let n = self.rank();
        if v.len() != n {
            return None;
        }
        let mut r: Vec<BigRational> = v.iter().map(|x| x * &self.denom).collect();
        if r.iter().any(|x| !x.denom().is_one()) {
            return None;
        }
        let mut coords = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let num = r[i].to_integer();
            let (c, rem) = num.div_rem(&self.hnf[i][i]);
            if !rem.is_zero() {
                return None;
            }
            for (k, x) in r.iter_mut().enumerate().take(i + 1) {
                *x -= BigRational::from_integer(&c * &self.hnf[i][k]);
            }
            coords[i] = c;
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subset_of(&self, other: &ModuleLattice) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    pub fn scale(&self, s: &BigRational) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::RankDeficient);
        }
        let gens: Vec<Vec<BigRational>> = self
            .basis()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x * s).collect())
            .collect();
        Self::from_generators(&gens)
    }

    pub fn sum(&self, other: &ModuleLattice) -> Result<Self> {
        let mut gens = self.basis();
        gens.extend(other.basis());
        Self::from_generators(&gens)
    }

    /// `{v : ⟨v, w⟩ ∈ ℤ for all w in the lattice}`.
    pub fn dual(&self) -> Self {
        let b = from_columns(&self.basis());
        let inv = inverse(&b).expect("lattice bases are nonsingular");
        // columns of (B⁻¹)ᵀ are the rows of B⁻¹
        let cols: Vec<Vec<BigRational>> = inv;
        Self::from_generators(&cols).expect("dual of a full-rank lattice has full rank")
    }

    /// `L₁ ∩ L₂ = (L₁* + L₂*)*`.
    pub fn intersect(&self, other: &ModuleLattice) -> Result<Self> {
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Apply a nonsingular linear map given as a row-major matrix.
    pub fn map(&self, m: &[Vec<BigRational>]) -> Result<Self> {
        let gens: Vec<Vec<BigRational>> = self
            .basis()
            .iter()
            .map(|c| super::linalg::mat_vec(&m.to_vec(), c))
            .collect();
        Self::from_generators(&gens)
    }

    /// Basis matrix with the basis vectors as columns.
    pub fn basis_matrix(&self) -> Vec<Vec<BigRational>> {
        transpose(&self.basis())
    }
}

#[cfg(test)]
mod tests {
    use super::super::linalg::q;
    use super::*;

    fn lat(gens: &[&[i64]]) -> ModuleLattice {
        let g: Vec<Vec<BigRational>> = gens.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
        ModuleLattice::from_generators(&g).unwrap()
    }

    fn ints(m: &ModuleLattice) -> Vec<Vec<i64>> {
        m.hnf_columns()
            .iter()
            .map(|c| c.iter().map(|x| x.try_into().unwrap()).collect())
            .collect()
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(ints(&lat(&[&[1, 0], &[0, 1]])), vec![vec![1, 0], vec![0, 1]]);
        let l = lat(&[&[2, 0], &[0, 2], &[1, 1]]);
        assert_eq!(l.covolume(), q(2));
        assert_eq!(ints(&l), vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(lat(&[&[1, 1], &[0, 2], &[2, 0]]), l);
    }

    #[test]
    fn rank_deficiency() {
        let g = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(ModuleLattice::from_generators(&g), Err(Error::RankDeficient));
        let g = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]];
        assert_eq!(ModuleLattice::from_generators(&g), Err(Error::RankDeficient));
    }

    #[test]
    fn rational_lattices_are_canonical() {
        let half = BigRational::new(1.into(), 2.into());
        let a = ModuleLattice::from_generators(&[vec![half.clone(), q(0)], vec![q(0), q(1)]]).unwrap();
        assert_eq!(a.denominator(), &BigInt::from(2));
        let b = ModuleLattice::from_generators(&[vec![half.clone(), q(0)], vec![half.clone(), q(1)]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.covolume(), half);
        // 2/4 reduces to a denominator-1 lattice
        let c = ModuleLattice::from_generators(&[vec![q(1), q(0)], vec![q(0), BigRational::new(4.into(), 2.into())]])
            .unwrap();
        assert_eq!(c.denominator(), &BigInt::from(1));
    }

    #[test]
    fn membership_and_intersection() {
        let a = lat(&[&[2, 0], &[0, 3]]);
        let b = lat(&[&[3, 0], &[0, 2]]);
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, lat(&[&[6, 0], &[0, 6]]));
        assert!(a.contains(&[q(4), q(-9)]));
        assert!(!a.contains(&[q(1), q(0)]));
        let s = a.sum(&b).unwrap();
        assert_eq!(s, lat(&[&[1, 0], &[0, 1]]));
        assert!(i.is_subset_of(&a) && i.is_subset_of(&b));
    }

    #[test]
    fn dual_is_an_involution() {
        let a = lat(&[&[2, 1, 0], &[0, 3, 1], &[1, 0, 5]]);
        assert_eq!(a.dual().dual(), a);
        assert_eq!(a.dual().covolume() * a.covolume(), q(1));
    }
}
