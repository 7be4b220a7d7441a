//! Extension classes of a point group by a lattice.
//!
//! A tuple `(t_1, ..., t_l)` defines a group exactly when every Coxeter
//! relator evaluates to a lattice translation. In lattice coordinates this is
//! `R c ∈ Z^N` for an integer matrix `R`, and with `S = U R V` in Smith form the
//! classes modulo coboundaries and lattice shifts are `⊕ Z/d_i` over the
//! nontrivial elementary divisors, with representatives `V e_i / d_i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactla::{smith_normal_form, IntegerMatrix, RationalVector};
use crate::lattices::InvariantLattice;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionClasses {
    /// Orders of the cyclic factors, each greater than one.
    pub invariants: Vec<BigInt>,
    /// One generator translation tuple per cyclic factor, in the ambient space.
    pub generators: Vec<Vec<RationalVector>>,
}

impl ExtensionClasses {
    /// Number of classes, one of which is split.
    pub fn count(&self) -> BigInt {
        self.invariants.iter().product()
    }
}

/// Stacked relator matrix acting on the generator translations in lattice coordinates.
fn relator_matrix(l: &InvariantLattice) -> IntegerMatrix {
    let w = l.group();
    let k = l.rank();
    let n = w.num_generators();
    let a = l.generator_actions();
    let cm = w.coxeter_matrix();
    let mut rows: Vec<BigInt> = Vec::new();
    let mut count = 0;
    for i in 0..n {
        for j in i..n {
            let word: Vec<usize> = if i == j { vec![i, i] } else { (0..cm[i][j]).flat_map(|_| [i, j]).collect() };
            let mut block = IntegerMatrix::zeros(k, k * n);
            let mut prefix = IntegerMatrix::identity(k);
            for &s in &word {
                for r in 0..k {
                    for c in 0..k {
                        *block.get_mut(r, s * k + c) += prefix.get(r, c);
                    }
                }
                prefix = &prefix * &a[s];
            }
            rows.extend(block.entries().iter().cloned());
            count += k;
        }
    }
    IntegerMatrix::new(count, k * n, rows).expect("row-major relator blocks")
}

/// The group of extension classes `H^1(W0, V/L)` with generating cocycles.
pub fn extension_classes(l: &InvariantLattice) -> ExtensionClasses {
    let k = l.rank();
    let n = l.group().num_generators();
    let (s, _, v) = smith_normal_form(&relator_matrix(l));
    let mut invariants = Vec::new();
    let mut generators = Vec::new();
    for i in 0..s.rows().min(s.cols()) {
        let d = s.get(i, i);
        if d.is_zero() {
            break;
        }
        if d.is_one() {
            continue;
        }
        let col = v.column(i);
        let tuple = (0..n)
            .map(|g| {
                let c = RationalVector::new(
                    col[g * k..(g + 1) * k]
                        .iter()
                        .map(|x| BigRational::new(x.clone(), d.clone()))
                        .collect(),
                );
                l.from_coordinates(&c.fract())
            })
            .collect();
        invariants.push(d.clone());
        generators.push(tuple);
    }
    ExtensionClasses { invariants, generators }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystgrp::CrystGroup;
    use crate::rootsys::{family_lattice, LatticeFamily, RootSystem, RootType};
    use crate::weyl::WeylGroup;
    use std::sync::Arc;

    fn lattice(t: RootType, l: usize, f: LatticeFamily) -> Arc<InvariantLattice> {
        let r = RootSystem::build(t, l).unwrap();
        let w = Arc::new(WeylGroup::of_root_system(&r).unwrap());
        Arc::new(InvariantLattice::new(family_lattice(f, l).unwrap(), w).unwrap())
    }

    #[test]
    fn generators_build_nonsplit_groups() {
        let l = lattice(RootType::B, 3, LatticeFamily::CL);
        let h = extension_classes(&l);
        assert_eq!(h.count(), BigInt::from(4));
        for t in &h.generators {
            let w = CrystGroup::build_from_generators(l.clone(), t).unwrap();
            assert!(!w.is_split());
        }
    }

    #[test]
    fn brute_force_class_count_b3() {
        // all tuples with half-integral lattice coordinates, grouped by
        // whether their differences split
        let l = lattice(RootType::B, 3, LatticeFamily::CL);
        let mut reps: Vec<Vec<RationalVector>> = Vec::new();
        for mask in 0u32..512 {
            let t: Vec<RationalVector> = (0..3)
                .map(|g| {
                    RationalVector::new(
                        (0..3)
                            .map(|c| BigRational::new(BigInt::from((mask >> (3 * g + c)) & 1), BigInt::from(2)))
                            .collect(),
                    )
                })
                .collect();
            if CrystGroup::build_from_generators(l.clone(), &t).is_err() {
                continue;
            }
            let new = reps.iter().all(|r| {
                let diff: Vec<RationalVector> = r.iter().zip(&t).map(|(a, b)| a - b).collect();
                !CrystGroup::build_from_generators(l.clone(), &diff).unwrap().is_split()
            });
            if new {
                reps.push(t);
            }
        }
        assert_eq!(reps.len(), 4);
    }
}
