//! A three-valued test for isomorphism of lattices as group modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::InvariantLattice;
use crate::exactla::{elementary_divisors, integer_kernel, IntegerMatrix, RationalMatrix};
use crate::weyl::Elem;

/// Groups up to this order are screened element by element.
const FULL_SCREEN_LIMIT: usize = 5000;
/// Box half-width for the unimodular search.
const SEARCH_RADIUS: i64 = 2;
/// Cap on the number of candidate maps examined.
const SEARCH_LIMIT: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZEquivalence {
    /// An equivariant unimodular map, as a matrix from the first lattice's
    /// coordinates to the second's.
    Isomorphic(IntegerMatrix),
    /// The named invariant differs.
    Distinct(String),
    /// Neither the screen nor the bounded search decided.
    Unknown,
}

/// Invariant of `M` under `M -> P M Q` with `P, Q` unimodular.
fn smith_signature(m: &IntegerMatrix) -> Vec<BigInt> {
    elementary_divisors(m)
}

fn shifted(a: &IntegerMatrix, sign: i64) -> IntegerMatrix {
    let k = a.rows();
    IntegerMatrix::from_fn(k, k, |r, c| {
        let x = a.get(r, c).clone();
        if r == c { x - BigInt::from(sign) } else { x }
    })
}

fn screen_elements(l: &InvariantLattice) -> Vec<Elem> {
    let w = l.group();
    if w.order() <= FULL_SCREEN_LIMIT {
        return w.elements().collect();
    }
    let n = w.num_generators();
    let mut out: Vec<Elem> = (0..n).map(|i| w.generator(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(w.mul(w.generator(i), w.generator(j)));
        }
    }
    out
}

fn stacked(actions: &[IntegerMatrix], sign: i64, vertical: bool) -> IntegerMatrix {
    actions
        .iter()
        .map(|a| shifted(a, sign))
        .reduce(|x, y| if vertical { x.vstack(&y) } else { x.hstack(&y) })
        .expect("at least one generator")
}

/// Decides, where it can, whether two lattices for the same point group are
/// isomorphic as modules.
pub fn z_equivalence_small(l1: &InvariantLattice, l2: &InvariantLattice) -> ZEquivalence {
    if l1.rank() != l2.rank() {
        return ZEquivalence::Distinct("rank".into());
    }
    let (w1, w2) = (l1.group(), l2.group());
    if w1.generators() != w2.generators() {
        return ZEquivalence::Unknown;
    }
    let k = l1.rank();

    let (g1, g2) = (l1.generator_actions(), l2.generator_actions());
    for sign in [1, -1] {
        for vertical in [true, false] {
            if smith_signature(&stacked(g1, sign, vertical)) != smith_signature(&stacked(g2, sign, vertical)) {
                let what = if sign == 1 { "g - 1" } else { "g + 1" };
                let how = if vertical { "stacked" } else { "joined" };
                return ZEquivalence::Distinct(format!("elementary divisors of {how} generator {what}"));
            }
        }
    }
    for g in screen_elements(l1) {
        for sign in [1, -1] {
            if smith_signature(&shifted(l1.action(g), sign)) != smith_signature(&shifted(l2.action(g), sign)) {
                let what = if sign == 1 { "g - 1" } else { "g + 1" };
                return ZEquivalence::Distinct(format!("elementary divisors of {what} at element {g}"));
            }
        }
    }

    // equivariant maps: X A1_s = A2_s X for every generator
    let kk = k * k;
    let mut rows = Vec::new();
    for (a1, a2) in g1.iter().zip(g2) {
        for i in 0..k {
            for j in 0..k {
                let mut row = vec![BigRational::zero(); kk];
                for m in 0..k {
                    row[i * k + m] += BigRational::from_integer(a1.get(m, j).clone());
                    row[m * k + j] -= BigRational::from_integer(a2.get(i, m).clone());
                }
                rows.extend(row);
            }
        }
    }
    let system = RationalMatrix::new(rows.len() / kk, kk, rows).expect("row-major system");
    let kernel = integer_kernel(&system);
    if kernel.is_empty() {
        return ZEquivalence::Distinct("no equivariant rational map".into());
    }
    let r = kernel.len();
    let side = (2 * SEARCH_RADIUS + 1) as usize;
    let total = side.checked_pow(r as u32).unwrap_or(usize::MAX);
    if total > SEARCH_LIMIT {
        return ZEquivalence::Unknown;
    }
    let mut coeffs = vec![-SEARCH_RADIUS; r];
    for _ in 0..total {
        if coeffs.iter().any(|&c| c != 0) {
            let mut x = vec![BigInt::zero(); kk];
            for (c, v) in coeffs.iter().zip(&kernel) {
                if *c == 0 {
                    continue;
                }
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi += BigInt::from(*c) * vi;
                }
            }
            let m = IntegerMatrix::new(k, k, x).expect("k x k map");
            if m.determinant().abs() == BigInt::from(1) {
                return ZEquivalence::Isomorphic(m);
            }
        }
        for c in coeffs.iter_mut() {
            *c += 1;
            if *c <= SEARCH_RADIUS {
                break;
            }
            *c = -SEARCH_RADIUS;
        }
    }
    ZEquivalence::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ratio;
    use crate::rootsys::{family_lattice, LatticeFamily, LatticeSpec, RootSystem, RootType};
    use crate::weyl::WeylGroup;
    use std::sync::Arc;

    #[test]
    fn scaling_is_an_isomorphism() {
        let r = RootSystem::build(RootType::B, 3).unwrap();
        let w = Arc::new(WeylGroup::of_root_system(&r).unwrap());
        let spec = family_lattice(LatticeFamily::CCL, 3).unwrap();
        let l1 = InvariantLattice::new(spec.clone(), w.clone()).unwrap();
        let l2 = InvariantLattice::new(spec.scaled(&ratio(3, 1)), w).unwrap();
        assert!(matches!(z_equivalence_small(&l1, &l2), ZEquivalence::Isomorphic(_)));
    }

    #[test]
    fn two_actions_of_order_two() {
        let g = RationalMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]);
        let w = Arc::new(WeylGroup::generate(&[g]).unwrap());
        let standard = LatticeSpec::new(LatticeFamily::CL, RationalMatrix::identity(2)).unwrap();
        let skew = LatticeSpec::new(
            LatticeFamily::CL,
            RationalMatrix::new(2, 2, vec![ratio(1, 1), ratio(1, 2), ratio(0, 1), ratio(-1, 2)]).unwrap(),
        )
        .unwrap();
        let l1 = InvariantLattice::new(standard, w.clone()).unwrap();
        let l2 = InvariantLattice::new(skew, w).unwrap();
        assert_eq!(
            l2.generator_actions()[0],
            IntegerMatrix::from_i64_rows(&[&[1, 1], &[0, -1]])
        );
        assert!(matches!(z_equivalence_small(&l1, &l2), ZEquivalence::Distinct(_)));
    }
}
