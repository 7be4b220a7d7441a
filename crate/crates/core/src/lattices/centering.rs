//! Finite-index stable sublattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::InvariantLattice;
use crate::error::{Error, Result};
use crate::exactla::{hermite_normal_form, IntegerMatrix, RationalMatrix};

/// Default cap on the number of candidate matrices examined.
pub const DEFAULT_CENTERING_WORK_CEILING: u128 = 50_000_000;

/// A stable sublattice of finite index, stored by its Hermite basis in the
/// coordinates of the parent lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Centering {
    /// Lower-triangular Hermite form; columns are sublattice vectors in parent coordinates.
    pub coords: IntegerMatrix,
    /// The same basis in the ambient space.
    pub sub_basis: RationalMatrix,
    pub index: BigInt,
}

impl Centering {
    /// Builds a centering from any full-rank integer basis in parent coordinates.
    pub fn from_coordinates(parent: &InvariantLattice, coords: &IntegerMatrix) -> Result<Self> {
        let k = parent.rank();
        if coords.rows() != k || coords.cols() != k {
            return Err(Error::DimensionMismatch("centering basis must be square of the lattice rank".into()));
        }
        let (h, _) = hermite_normal_form(coords);
        let index: BigInt = (0..k).map(|i| h.get(i, i).clone()).product();
        if index.is_zero() {
            return Err(Error::NotASublattice("centering must have finite index".into()));
        }
        if !is_stable(parent.generator_actions(), &h) {
            return Err(Error::NotInvariant("sublattice is not stable under the group".into()));
        }
        let sub_basis = parent.basis() * &h.to_rational();
        Ok(Centering { coords: h, sub_basis, index })
    }

    /// Greatest common divisor of the coordinate entries.
    pub fn content(&self) -> BigInt {
        self.coords.content()
    }

    pub fn is_maximal(&self) -> bool {
        self.content().is_one()
    }
}

/// Whether every `A h_j` lies in the span of the columns of the lower-triangular `h`.
fn is_stable(actions: &[IntegerMatrix], h: &IntegerMatrix) -> bool {
    let k = h.rows();
    let mut x = vec![BigInt::zero(); k];
    for a in actions {
        for j in 0..k {
            let y = a.mul_vec(&h.column(j));
            for i in 0..k {
                let mut rest = y[i].clone();
                for (t, xt) in x.iter().enumerate().take(i) {
                    let hij = h.get(i, t);
                    if !hij.is_zero() && !xt.is_zero() {
                        rest -= hij * xt;
                    }
                }
                let (q, r) = rest.div_rem(h.get(i, i));
                if !r.is_zero() {
                    return false;
                }
                x[i] = q;
            }
        }
    }
    true
}

/// Number of lower-triangular Hermite matrices of rank `k` with determinant at most `n`,
/// saturating once `cap` is passed.
fn candidate_count(k: usize, n: u64, cap: u128) -> u128 {
    fn go(row: usize, k: usize, budget: u64, acc: u128, cap: u128) -> u128 {
        if row == k {
            return acc;
        }
        let mut total: u128 = 0;
        for d in 1..=budget {
            let weight = (d as u128).saturating_pow(row as u32);
            total = total.saturating_add(go(row + 1, k, budget / d, acc.saturating_mul(weight), cap));
            if total > cap {
                return total;
            }
        }
        total
    }
    go(0, k, n, 1, cap)
}

pub fn enumerate_centerings(l: &InvariantLattice, max_index: u64) -> Result<Vec<Centering>> {
    enumerate_centerings_with_ceiling(l, max_index, DEFAULT_CENTERING_WORK_CEILING)
}

/// All stable sublattices of index at most `max_index`, sorted by index and
/// then by Hermite basis.
///
/// Every lower-triangular Hermite matrix of bounded determinant is tested, so
/// the list is complete.
pub fn enumerate_centerings_with_ceiling(
    l: &InvariantLattice,
    max_index: u64,
    ceiling: u128,
) -> Result<Vec<Centering>> {
    if max_index == 0 {
        return Err(Error::DimensionMismatch("max_index must be at least 1".into()));
    }
    let k = l.rank();
    let work = candidate_count(k, max_index, ceiling);
    if work > ceiling {
        return Err(Error::BoundTooLarge { work, ceiling });
    }
    let actions = l.generator_actions();
    let mut found = Vec::new();
    let mut diag = vec![0u64; k];
    enumerate_diagonals(0, max_index, &mut diag, &mut |d| {
        let mut h = IntegerMatrix::zeros(k, k);
        for (i, &di) in d.iter().enumerate() {
            *h.get_mut(i, i) = BigInt::from(di);
        }
        // below-diagonal slots (i, j), j < i, each ranging over [0, d_i)
        let slots: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
        let mut counters = vec![0u64; slots.len()];
        loop {
            if is_stable(actions, &h) {
                found.push(h.clone());
            }
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == slots.len() {
                    return;
                }
                let (i, j) = slots[pos];
                counters[pos] += 1;
                if counters[pos] < d[i] {
                    *h.get_mut(i, j) = BigInt::from(counters[pos]);
                    break;
                }
                counters[pos] = 0;
                *h.get_mut(i, j) = BigInt::zero();
                pos += 1;
            }
        }
    });
    let mut out: Vec<Centering> = found
        .into_iter()
        .map(|h| {
            let index = (0..k).map(|i| h.get(i, i).clone()).product();
            let sub_basis = l.basis() * &h.to_rational();
            Centering { coords: h, sub_basis, index }
        })
        .collect();
    out.sort_by(|a, b| a.index.cmp(&b.index).then_with(|| a.coords.cmp(&b.coords)));
    Ok(out)
}

fn enumerate_diagonals(row: usize, budget: u64, diag: &mut [u64], f: &mut impl FnMut(&[u64])) {
    if row == diag.len() {
        f(diag);
        return;
    }
    for d in 1..=budget {
        diag[row] = d;
        enumerate_diagonals(row + 1, budget / d, diag, f);
    }
}

/// The `≺`-maximal centering above `c`: divide its basis by the content.
///
/// The relation `C = λ C'` is only considered for nonzero `λ`.
pub fn maximal_centering(c: &Centering, l: &InvariantLattice) -> Centering {
    let d = c.content();
    let coords = IntegerMatrix::from_fn(c.coords.rows(), c.coords.cols(), |r, s| c.coords.get(r, s) / &d);
    let (h, _) = hermite_normal_form(&coords);
    let k = h.rows();
    let index = (0..k).map(|i| h.get(i, i).clone()).product();
    let sub_basis = l.basis() * &h.to_rational();
    Centering { coords: h, sub_basis, index }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ratio;
    use crate::rootsys::{LatticeFamily, LatticeSpec};
    use crate::weyl::WeylGroup;
    use std::sync::Arc;

    fn trivial_z() -> InvariantLattice {
        let w = Arc::new(WeylGroup::generate(&[RationalMatrix::identity(1)]).unwrap());
        let spec = LatticeSpec::new(LatticeFamily::CL, RationalMatrix::identity(1)).unwrap();
        InvariantLattice::new(spec, w).unwrap()
    }

    #[test]
    fn subgroups_of_z() {
        let l = trivial_z();
        let c = enumerate_centerings(&l, 3).unwrap();
        let idx: Vec<BigInt> = c.iter().map(|c| c.index.clone()).collect();
        assert_eq!(idx, vec![1.into(), 2.into(), 3.into()]);
        assert!(c[0].coords.is_identity());
    }

    #[test]
    fn candidate_counts() {
        // rank 1: one candidate per determinant
        assert_eq!(candidate_count(1, 7, u128::MAX), 7);
        // rank 2, det <= 2: diag (1,1), (1,2) x2 entries, (2,1) x1
        assert_eq!(candidate_count(2, 2, u128::MAX), 4);
    }

    #[test]
    fn ceiling_is_reported() {
        let l = trivial_z();
        assert!(matches!(
            enumerate_centerings_with_ceiling(&l, 100, 10),
            Err(Error::BoundTooLarge { .. })
        ));
    }

    #[test]
    fn scaled_centering_is_reduced() {
        let l = trivial_z();
        let c = Centering::from_coordinates(&l, &IntegerMatrix::from_i64_rows(&[&[6]])).unwrap();
        let m = maximal_centering(&c, &l);
        assert!(m.coords.is_identity());
        assert_eq!(m.sub_basis.get(0, 0), &ratio(1, 1));
    }
}
