//! Lattices given by rational bases (columns of a matrix).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::diophantine::integer_kernel;
use super::matrix::{int_ratio, IntegerMatrix, RationalMatrix, RationalVector};
use super::normal_form::{hermite_normal_form, smith_normal_form};
use crate::error::{Error, Result};

/// Index of a sublattice, possibly infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

/// `[ambient : sub]` for lattices given by column bases.
///
/// Fails with `NotASublattice` unless every column of `sub` is an integral
/// combination of the columns of `ambient`.
pub fn lattice_index(ambient: &RationalMatrix, sub: &RationalMatrix) -> Result<Index> {
    if ambient.rows() != sub.rows() {
        return Err(Error::DimensionMismatch(format!(
            "bases live in dimensions {} and {}",
            ambient.rows(),
            sub.rows()
        )));
    }
    let x = ambient
        .solve_matrix(sub)
        .ok_or_else(|| Error::NotASublattice("sub basis leaves the ambient span".into()))?;
    let x = x
        .to_integer()
        .ok_or_else(|| Error::NotASublattice("sub basis has fractional ambient coordinates".into()))?;
    let (s, _, _) = smith_normal_form(&x);
    let k = ambient.cols();
    let diag: Vec<&BigInt> = (0..k.min(s.cols())).map(|i| s.get(i, i)).collect();
    if diag.len() < k || diag.iter().any(|d| d.is_zero()) {
        return Ok(Index::Infinite);
    }
    Ok(Index::Finite(diag.into_iter().product()))
}

/// Coordinates of `v` in the basis, if `v` lies in the rational span.
pub fn coordinates(basis: &RationalMatrix, v: &RationalVector) -> Option<RationalVector> {
    basis.solve(v)
}

/// Whether `v` is an integral combination of the basis columns.
pub fn lattice_contains(basis: &RationalMatrix, v: &RationalVector) -> bool {
    coordinates(basis, v).is_some_and(|c| c.is_integral())
}

/// Canonical basis of the lattice spanned by arbitrary rational generators.
///
/// The result is the Hermite form of the denominator-cleared generators,
/// scaled back, with zero columns dropped. Equal lattices give equal output.
pub fn lattice_from_generators(generators: &RationalMatrix) -> RationalMatrix {
    let d = generators.denominator_lcm();
    let scaled = generators
        .scale(&int_ratio(&d))
        .to_integer()
        .expect("denominators cleared");
    let (h, _) = hermite_normal_form(&scaled);
    let keep: Vec<usize> = (0..h.cols()).filter(|&c| h.column(c).iter().any(|x| !x.is_zero())).collect();
    let inv = BigRational::new(BigInt::one(), d);
    RationalMatrix::from_fn(h.rows(), keep.len(), |r, c| int_ratio(h.get(r, keep[c])) * &inv)
}

/// Basis of `L ∩ U` where `U` is the rational span of `subspace`.
pub fn sublattice_in_subspace(lattice: &RationalMatrix, subspace: &RationalMatrix) -> RationalMatrix {
    let n = lattice.rows();
    assert_eq!(n, subspace.rows(), "lattice and subspace dimension mismatch");
    // rows of p cut out U
    let annihilators = subspace.left_nullspace();
    let p = RationalMatrix::from_fn(annihilators.len(), n, |r, c| annihilators[r][c].clone());
    let constraints = if annihilators.is_empty() {
        RationalMatrix::zeros(0, lattice.cols())
    } else {
        &p * lattice
    };
    let kernel = integer_kernel(&constraints);
    if kernel.is_empty() {
        return RationalMatrix::zeros(n, 0);
    }
    let k = IntegerMatrix::from_columns(lattice.cols(), &kernel).to_rational();
    lattice_from_generators(&(lattice * &k))
}

/// Whether two column bases span the same lattice.
pub fn same_lattice(a: &RationalMatrix, b: &RationalMatrix) -> bool {
    a.rows() == b.rows() && lattice_from_generators(a) == lattice_from_generators(b)
}

/// Absolute value of the determinant of a square basis (covolume).
pub fn covolume(basis: &RationalMatrix) -> BigRational {
    basis.determinant().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::matrix::ratio;

    #[test]
    fn scaled_lattice_index() {
        let l = RationalMatrix::identity(3);
        let sub = l.scale(&ratio(2, 1));
        assert_eq!(lattice_index(&l, &sub).unwrap(), Index::Finite(8.into()));
    }

    #[test]
    fn rank_drop_is_infinite() {
        let l = RationalMatrix::identity(2);
        let sub = RationalMatrix::from_i64_rows(&[&[1], &[0]]);
        assert_eq!(lattice_index(&l, &sub).unwrap(), Index::Infinite);
    }

    #[test]
    fn non_sublattice_is_rejected() {
        let l = RationalMatrix::identity(2);
        let half = l.scale(&ratio(1, 2));
        assert!(matches!(lattice_index(&l, &half), Err(Error::NotASublattice(_))));
    }

    #[test]
    fn generators_are_canonicalized() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 1], &[0, 2]]);
        let b = RationalMatrix::from_i64_rows(&[&[1, 0, 2], &[2, 2, 0]]);
        assert!(same_lattice(&a, &b));
        assert_eq!(lattice_from_generators(&b).cols(), 2);
    }

    #[test]
    fn full_subspace_returns_lattice() {
        let l = RationalMatrix::from_i64_rows(&[&[2, 1], &[0, 3]]);
        let out = sublattice_in_subspace(&l, &RationalMatrix::identity(2));
        assert!(same_lattice(&out, &l));
    }
}
