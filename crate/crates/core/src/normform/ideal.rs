use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

use super::field::NumberFieldDescription;
use super::lattice::ModuleLattice;
use super::linalg::common_denominator;

/// HNF of the lattice generated by `generators` (power-basis coordinates).
pub fn module_hnf(field: &NumberFieldDescription, generators: &[Vec<BigRational>]) -> Result<ModuleLattice> {
    let n = field.degree();
    if generators.iter().any(|g| g.len() != n) {
        return Err(Error::InvalidModule(format!("generators must have {n} coordinates")));
    }
    if generators.len() < n {
        return Err(Error::RankDeficient);
    }
    ModuleLattice::from_generators(generators)
}

/// Least positive integer `a` with `a·M ⊂ O_K`, and `a·M`.
pub fn clear_denominators(field: &NumberFieldDescription, m: &ModuleLattice) -> (ModuleLattice, BigInt) {
    let coords: Vec<BigRational> = m.basis().iter().flat_map(|b| field.to_integral_coords(b)).collect();
    let a = common_denominator(&coords);
    if a.is_one() {
        return (m.clone(), a);
    }
    let scaled = m
        .scale(&BigRational::from_integer(a.clone()))
        .expect("scaling by a positive integer keeps full rank");
    (scaled, a)
}

/// Lattice spanned by all products `a·b`.
pub fn product(field: &NumberFieldDescription, a: &ModuleLattice, b: &ModuleLattice) -> Result<ModuleLattice> {
    let (ab, bb) = (a.basis(), b.basis());
    let gens: Vec<Vec<BigRational>> = ab
        .iter()
        .flat_map(|x| bb.iter().map(move |y| (x, y)))
        .map(|(x, y)| field.mul(x, y))
        .collect();
    ModuleLattice::from_generators(&gens)
}

/// `O_K·M` and its norm `[O_K : O_K M]` (a covolume ratio, so fractional
/// modules get a rational norm).
pub fn ok_module(field: &NumberFieldDescription, m: &ModuleLattice) -> Result<(ModuleLattice, BigRational)> {
    let ok = field.ring_of_integers();
    let okm = product(field, &ok, m)?;
    let norm = okm.covolume() / ok.covolume();
    Ok((okm, norm))
}

/// `{x ∈ K : x·b ∈ A for all b ∈ B} = ⋂_b b⁻¹A`.
pub fn colon(field: &NumberFieldDescription, a: &ModuleLattice, b: &ModuleLattice) -> Result<ModuleLattice> {
    let mut acc: Option<ModuleLattice> = None;
    for g in b.basis() {
        let inv = field.element_inverse(&g).ok_or(Error::RankDeficient)?;
        let gens: Vec<Vec<BigRational>> = a.basis().iter().map(|x| field.mul(x, &inv)).collect();
        let l = ModuleLattice::from_generators(&gens)?;
        acc = Some(match acc {
            None => l,
            Some(prev) => prev.intersect(&l)?,
        });
    }
    acc.ok_or(Error::RankDeficient)
}

/// Ring of multipliers `{α ∈ K : αM ⊂ M}`.
pub fn multiplier_ring(field: &NumberFieldDescription, m: &ModuleLattice) -> Result<ModuleLattice> {
    colon(field, m, m)
}

/// Is `M` an invertible ideal of its ring of multipliers `O`, i.e. does
/// `M·(O : M) = O` hold?
pub fn is_invertible_ideal(field: &NumberFieldDescription, m: &ModuleLattice, o: &ModuleLattice) -> Result<bool> {
    if &multiplier_ring(field, m)? != o {
        return Err(Error::NotMultiplierRing);
    }
    let inv = colon(field, o, m)?;
    Ok(&product(field, m, &inv)? == o)
}
