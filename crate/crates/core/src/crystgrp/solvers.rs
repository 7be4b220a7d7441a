//! Linear Diophantine reductions of splitting and coset questions.
//!
//! Every question about a coset `xT` becomes a system over integer offsets in
//! lattice coordinates. The zero offset is always tried first so that the
//! witness is the supplied representative whenever that already works.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{CrystGroup, GroupElement};
use crate::error::{Error, Result};
use crate::exactla::{
    integer_kernel, int_ratio, smith_normal_form, solve_integer_linear, IntegerMatrix, RationalMatrix, RationalVector,
};
use crate::weyl::Elem;

/// A vector `v` whose coboundary `g -> (1 - g) v` represents the vector system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitWitness {
    /// `v` in lattice coordinates.
    pub coords: RationalVector,
    /// `v` in the ambient space.
    pub v: RationalVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingWitness {
    pub z_g: GroupElement,
    /// The involution.
    pub z_h: GroupElement,
}

/// Ranks and mod-2 sizes of the fixed and negated sublattices of an involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReflectionProfile {
    pub fixed_rank: usize,
    pub negated_rank: usize,
    pub fixed_mod2: u64,
    pub negated_mod2: u64,
}

impl ReflectionProfile {
    pub fn as_tuple(&self) -> (usize, usize, u64, u64) {
        (self.fixed_rank, self.negated_rank, self.fixed_mod2, self.negated_mod2)
    }
}

/// `A + sign * I` over the rationals.
fn shifted(a: &IntegerMatrix, sign: i64) -> RationalMatrix {
    let k = a.rows();
    RationalMatrix::from_fn(k, k, |r, c| {
        let mut x = int_ratio(a.get(r, c));
        if r == c {
            x += BigRational::from_integer(sign.into());
        }
        x
    })
}

/// Places `blocks[i][j]` (each `k x k`, `None` for zero) into one matrix.
fn block_matrix(k: usize, blocks: &[Vec<Option<RationalMatrix>>]) -> RationalMatrix {
    let br = blocks.len();
    let bc = blocks[0].len();
    RationalMatrix::from_fn(br * k, bc * k, |r, c| match &blocks[r / k][c / k] {
        Some(m) => m.get(r % k, c % k).clone(),
        None => BigRational::zero(),
    })
}

fn concat(parts: &[RationalVector]) -> RationalVector {
    RationalVector::new(parts.iter().flat_map(|p| p.entries().iter().cloned()).collect())
}

fn split_solution(x: &[BigInt], k: usize, parts: usize) -> Vec<RationalVector> {
    (0..parts)
        .map(|i| RationalVector::from_integers(&x[i * k..(i + 1) * k]))
        .collect()
}

impl CrystGroup {
    fn shifted_action(&self, g: Elem, sign: i64) -> RationalMatrix {
        shifted(self.action(g), sign)
    }

    /// Whether the group is a semidirect product `L ⋊ W0`.
    pub fn is_split(&self) -> bool {
        self.split_witness().is_some()
    }

    /// Solves `t_s - (1 - s) v ∈ L` for every generator `s`.
    ///
    /// With `S = U M V` the Smith form of the stacked `1 - s`, the system is
    /// solvable over rational `v` exactly when the rows of `U t` beyond the
    /// rank are integral. By the cocycle identity the generators suffice.
    pub fn split_witness(&self) -> Option<SplitWitness> {
        let k = self.rank();
        let m = self
            .point_group()
            .generators()
            .iter()
            .enumerate()
            .map(|(i, _)| {
                let a = &self.lattice.generator_actions()[i];
                IntegerMatrix::from_fn(k, k, |r, c| {
                    let x = -a.get(r, c);
                    if r == c { x + 1 } else { x }
                })
            })
            .reduce(|a, b| a.vstack(&b))?;
        let t = concat(&self.gen_coords);
        let (s, u, v) = smith_normal_form(&m);
        let w = u.mul_rational_vec(&t);
        let rank = (0..s.rows().min(s.cols())).take_while(|&i| !s.get(i, i).is_zero()).count();
        if !w.entries()[rank..].iter().all(|x| x.is_integer()) {
            return None;
        }
        let y = RationalVector::new(
            (0..k)
                .map(|i| if i < rank { &w.entries()[i] / int_ratio(s.get(i, i)) } else { BigRational::zero() })
                .collect(),
        );
        let coords = v.mul_rational_vec(&y);
        let amb = self.lattice.from_coordinates(&coords);
        Some(SplitWitness { coords, v: amb })
    }

    /// The complement `{((1 - g) v, g)}` determined by a splitting witness,
    /// after checking that each of its elements lies in the group.
    pub fn section(&self, w: &SplitWitness) -> Result<Vec<GroupElement>> {
        self.point_group()
            .elements()
            .map(|g| {
                let moved = self.action(g).mul_rational_vec(&w.coords);
                self.element_from_coords(&w.coords - &moved, g)
            })
            .collect()
    }

    /// An involution in the coset of `g`, built on the reduced representative.
    pub fn coset_involution_exists(&self, g: Elem) -> Option<GroupElement> {
        self.involution_in_coset(&self.coset_rep(g)).ok().flatten()
    }

    /// An involution `(c + x, g)` in `rep * T`: needs `g^2 = 1`, `g != 1` and
    /// `(1 + g)(c + x) = 0`.
    pub fn involution_in_coset(&self, rep: &GroupElement) -> Result<Option<GroupElement>> {
        self.check(rep)?;
        let w = self.point_group();
        if rep.g == w.identity() || !w.is_involution(rep.g) {
            return Ok(None);
        }
        let p = self.shifted_action(rep.g, 1);
        let rhs = -&p.mul_vec(&rep.coords);
        if rhs.is_zero() {
            return Ok(Some(rep.clone()));
        }
        Ok(solve_integer_linear(&p, &rhs).map(|sol| {
            let x = RationalVector::from_integers(&sol.particular);
            self.make(&rep.coords + &x, rep.g)
        }))
    }

    /// Elements of the cosets of `g` and `h` with equal squares.
    pub fn coset_equal_squares(&self, g: Elem, h: Elem) -> Option<(GroupElement, GroupElement)> {
        let reps = [self.coset_rep(g), self.coset_rep(h)];
        self.equal_squares_in_cosets(&reps)
            .ok()
            .flatten()
            .map(|mut v| {
                let b = v.pop().expect("two witnesses");
                let a = v.pop().expect("two witnesses");
                (a, b)
            })
    }

    /// Elements `z_i ∈ reps[i] * T` whose squares all coincide.
    ///
    /// Requires the point parts to have a common square; the translation part
    /// `(1 + g_1)(c_1 + x_1) = (1 + g_i)(c_i + x_i)` is solved jointly.
    pub fn equal_squares_in_cosets(&self, reps: &[GroupElement]) -> Result<Option<Vec<GroupElement>>> {
        for r in reps {
            self.check(r)?;
        }
        if reps.len() < 2 {
            return Ok(Some(reps.to_vec()));
        }
        let w = self.point_group();
        let sq0 = w.mul(reps[0].g, reps[0].g);
        if reps.iter().any(|r| w.mul(r.g, r.g) != sq0) {
            return Ok(None);
        }
        let k = self.rank();
        let p: Vec<RationalMatrix> = reps.iter().map(|r| self.shifted_action(r.g, 1)).collect();
        let img: Vec<RationalVector> = reps.iter().zip(&p).map(|(r, pi)| pi.mul_vec(&r.coords)).collect();
        if img.iter().all(|x| x == &img[0]) {
            return Ok(Some(reps.to_vec()));
        }
        let n = reps.len();
        let blocks: Vec<Vec<Option<RationalMatrix>>> = (1..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j == 0 {
                            Some(p[0].clone())
                        } else if j == i {
                            Some(-&p[i])
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        let a = block_matrix(k, &blocks);
        let rhs = concat(&(1..n).map(|i| &img[i] - &img[0]).collect::<Vec<_>>());
        Ok(solve_integer_linear(&a, &rhs).map(|sol| {
            split_solution(&sol.particular, k, n)
                .into_iter()
                .zip(reps)
                .map(|(x, r)| self.make(&r.coords + &x, r.g))
                .collect()
        }))
    }

    /// `z_g ∈ coset(g)` commuting with an involution `z_h ∈ coset(h)`.
    pub fn coset_commuting_with_involution(&self, g: Elem, h: Elem) -> Option<CommutingWitness> {
        self.commuting_in_cosets(&self.coset_rep(g), &self.coset_rep(h)).ok().flatten()
    }

    /// Unknowns `x, y` in `z_g = (c_g + x, g)`, `z_h = (c_h + y, h)`:
    ///
    /// `(1 + h) y = -(1 + h) c_h` makes `z_h` an involution, and
    /// `(1 - h) x + (g - 1) y = c_h + h c_g - c_g - g c_h` makes them commute.
    pub fn commuting_in_cosets(&self, rep_g: &GroupElement, rep_h: &GroupElement) -> Result<Option<CommutingWitness>> {
        self.check(rep_g)?;
        self.check(rep_h)?;
        let w = self.point_group();
        let (g, h) = (rep_g.g, rep_h.g);
        if h == w.identity() || !w.is_involution(h) || w.mul(g, h) != w.mul(h, g) {
            return Ok(None);
        }
        let zero_works = self.involution_in_coset(rep_h)?.as_ref() == Some(rep_h) && self.commute(rep_g, rep_h)?;
        if zero_works {
            return Ok(Some(CommutingWitness { z_g: rep_g.clone(), z_h: rep_h.clone() }));
        }
        let k = self.rank();
        let (ag, ah) = (self.action(g).to_rational(), self.action(h).to_rational());
        let (cg, ch) = (&rep_g.coords, &rep_h.coords);
        let a = block_matrix(
            k,
            &[
                vec![None, Some(self.shifted_action(h, 1))],
                vec![Some(-&self.shifted_action(h, -1)), Some(self.shifted_action(g, -1))],
            ],
        );
        let rhs1 = -&self.shifted_action(h, 1).mul_vec(ch);
        let rhs2 = &(&(ch + &ah.mul_vec(cg)) - cg) - &ag.mul_vec(ch);
        let rhs = concat(&[rhs1, rhs2]);
        Ok(solve_integer_linear(&a, &rhs).map(|sol| {
            let xs = split_solution(&sol.particular, k, 2);
            CommutingWitness {
                z_g: self.make(cg + &xs[0], g),
                z_h: self.make(ch + &xs[1], h),
            }
        }))
    }

    /// Ranks and mod-2 sizes of `L ∩ ker(1 - g)` and `L ∩ ker(1 + g)`.
    ///
    /// Conjugation by any `u` in the coset of `g` acts on `T` as `g`, so the
    /// result does not depend on a representative.
    pub fn reflection_coset_profile(&self, g: Elem) -> Result<ReflectionProfile> {
        let w = self.point_group();
        if g == w.identity() || !w.is_involution(g) {
            return Err(Error::NotAnInvolution);
        }
        let fixed_rank = integer_kernel(&self.shifted_action(g, -1)).len();
        let negated_rank = integer_kernel(&self.shifted_action(g, 1)).len();
        Ok(ReflectionProfile {
            fixed_rank,
            negated_rank,
            fixed_mod2: 1u64 << fixed_rank,
            negated_mod2: 1u64 << negated_rank,
        })
    }

    /// Basis of `L ∩ ker(1 - g)` in the ambient space.
    pub fn fixed_sublattice(&self, g: Elem) -> RationalMatrix {
        self.kernel_sublattice(g, -1)
    }

    /// Basis of `L ∩ ker(1 + g)` in the ambient space.
    pub fn negated_sublattice(&self, g: Elem) -> RationalMatrix {
        self.kernel_sublattice(g, 1)
    }

    fn kernel_sublattice(&self, g: Elem, sign: i64) -> RationalMatrix {
        let cols: Vec<Vec<BigInt>> = integer_kernel(&self.shifted_action(g, sign));
        let n = self.point_group().dim();
        if cols.is_empty() {
            return RationalMatrix::zeros(n, 0);
        }
        let c = IntegerMatrix::from_columns(self.rank(), &cols).to_rational();
        self.lattice.basis() * &c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ratio;
    use crate::lattices::InvariantLattice;
    use crate::rootsys::{family_lattice, LatticeFamily, RootSystem, RootType};
    use crate::weyl::WeylGroup;
    use std::sync::Arc;

    fn group(t: RootType, l: usize, f: LatticeFamily, gens: Vec<RationalVector>) -> CrystGroup {
        let r = RootSystem::build(t, l).unwrap();
        let w = Arc::new(WeylGroup::of_root_system(&r).unwrap());
        let lat = Arc::new(InvariantLattice::new(family_lattice(f, l).unwrap(), w).unwrap());
        CrystGroup::build_from_generators(lat, &gens).unwrap()
    }

    fn half_sum(n: usize) -> RationalVector {
        RationalVector::new(vec![ratio(1, 2); n])
    }

    #[test]
    fn split_detection_b3() {
        let z = RationalVector::zeros(3);
        let w1 = group(RootType::B, 3, LatticeFamily::CL, vec![z.clone(); 3]);
        assert!(w1.is_split());
        let w2 = group(RootType::B, 3, LatticeFamily::CL, vec![z.clone(), z.clone(), half_sum(3)]);
        assert!(!w2.is_split());
        let w4 = group(RootType::B, 3, LatticeFamily::CL, vec![half_sum(3); 3]);
        assert!(!w4.is_split());
        for g in [0, 1, 2] {
            assert!(w4.coset_involution_exists(w4.point_group().generator(g)).is_none());
        }
    }

    #[test]
    fn coboundary_is_detected_as_split() {
        // t_s = (1 - s) v for v = (1/3, 0, 0)
        let r = RootSystem::build(RootType::B, 3).unwrap();
        let v = RationalVector::new(vec![ratio(1, 3), ratio(0, 1), ratio(0, 1)]);
        let gens: Vec<RationalVector> = r
            .simple_reflections()
            .iter()
            .map(|s| &v - &s.mul_vec(&v))
            .collect();
        let w = group(RootType::B, 3, LatticeFamily::CL, gens);
        let wit = w.split_witness().unwrap();
        let sec = w.section(&wit).unwrap();
        assert_eq!(sec.len(), 48);
        for a in sec.iter().take(10) {
            for b in &sec {
                let c = w.multiply(a, b).unwrap();
                assert!(sec.contains(&c));
            }
        }
    }

    #[test]
    fn d6_equal_squares() {
        let e1 = RationalVector::unit(6, 0);
        let w2 = group(RootType::D, 6, LatticeFamily::FL, vec![e1.clone(); 6]);
        let pg = w2.point_group();
        let (a, b) = w2.coset_equal_squares(pg.generator(4), pg.generator(5)).unwrap();
        assert_eq!(w2.square(&a).unwrap(), w2.square(&b).unwrap());
        let reps = [w2.generator(4), w2.generator(5)];
        let got = w2.equal_squares_in_cosets(&reps).unwrap().unwrap();
        assert_eq!(got, reps.to_vec());
        assert_eq!(w2.square(&got[0]).unwrap().v, e1.scale(&ratio(2, 1)));

        let w3 = group(RootType::D, 6, LatticeFamily::FL, vec![half_sum(6); 6]);
        let pg = w3.point_group();
        assert!(w3.coset_equal_squares(pg.generator(4), pg.generator(5)).is_none());
    }

    #[test]
    fn b4_commuting_witness() {
        let q = |v: RationalVector| v.scale(&ratio(1, 4));
        let s = RationalVector::new(vec![ratio(1, 1); 4]);
        let e = |i| RationalVector::unit(4, i).scale(&ratio(1, 2));
        let z = RationalVector::zeros(4);
        let w3 = group(RootType::B, 4, LatticeFamily::CCL, vec![e(2), e(0), e(1), z.clone()]);
        let got = w3.commuting_in_cosets(&w3.generator(0), &w3.generator(3)).unwrap().unwrap();
        assert_eq!(got.z_g.v, e(2));
        assert_eq!(got.z_h.v, z);
        // the shifted tuple does not close up over this lattice
        let r = RootSystem::build(RootType::B, 4).unwrap();
        let w = Arc::new(WeylGroup::of_root_system(&r).unwrap());
        let lat = Arc::new(InvariantLattice::new(family_lattice(LatticeFamily::CCL, 4).unwrap(), w).unwrap());
        let shifted = vec![&e(2) + &q(s.clone()), &e(0) + &q(s.clone()), &e(1) + &q(s), z];
        assert!(matches!(
            CrystGroup::build_from_generators(lat, &shifted),
            Err(Error::InconsistentVectorSystem(_))
        ));
    }

    #[test]
    fn reflection_profiles() {
        let w = group(RootType::B, 3, LatticeFamily::CL, vec![RationalVector::zeros(3); 3]);
        let pg = w.point_group();
        assert_eq!(w.reflection_coset_profile(pg.generator(0)).unwrap().as_tuple(), (2, 1, 4, 2));
        let minus = pg.find(&RationalMatrix::identity(3).scale(&ratio(-1, 1))).unwrap();
        assert_eq!(w.reflection_coset_profile(minus).unwrap().as_tuple(), (0, 3, 1, 8));
        assert_eq!(w.reflection_coset_profile(0), Err(Error::NotAnInvolution));
        let rot = pg.mul(pg.generator(0), pg.generator(1));
        assert_eq!(w.reflection_coset_profile(rot), Err(Error::NotAnInvolution));
        assert_eq!(w.fixed_sublattice(pg.generator(0)).cols(), 2);
    }
}
