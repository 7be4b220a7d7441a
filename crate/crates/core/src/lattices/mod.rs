//! Lattices stable under a finite point group.

mod centering;
mod genus;
mod zequiv;

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactla::{commutant_dimension, lattice_index, IntegerMatrix, RationalMatrix, RationalVector};
use crate::rootsys::{root_lattice, weight_lattice, LatticeSpec, RootSystem};
use crate::weyl::{Elem, WeylGroup};

pub use centering::{
    enumerate_centerings, enumerate_centerings_with_ceiling, maximal_centering, Centering,
    DEFAULT_CENTERING_WORK_CEILING,
};
pub use genus::{genus_fingerprint, least_separating_modulus, quotients_isomorphic, GenusFingerprint, BACKTRACK_LIMIT};
pub use zequiv::{z_equivalence_small, ZEquivalence};

/// A lattice together with the integral action of a point group on it.
#[derive(Debug)]
pub struct InvariantLattice {
    spec: LatticeSpec,
    group: Arc<WeylGroup>,
    /// Left inverse of the basis: `basis_pinv * basis = I`.
    basis_pinv: RationalMatrix,
    gen_actions: Vec<IntegerMatrix>,
    actions: OnceLock<Vec<IntegerMatrix>>,
}

impl InvariantLattice {
    /// Checks that each generator maps the lattice onto itself and that the
    /// action is faithful.
    pub fn new(spec: LatticeSpec, group: Arc<WeylGroup>) -> Result<Self> {
        let b = &spec.basis;
        if b.rows() != group.dim() {
            return Err(Error::DimensionMismatch(format!(
                "lattice lives in dimension {}, group acts on dimension {}",
                b.rows(),
                group.dim()
            )));
        }
        let bt = b.transpose();
        let basis_pinv = &(&bt * b).inverse().expect("basis has full column rank") * &bt;
        let mut gen_actions = Vec::with_capacity(group.num_generators());
        for (i, s) in group.generators().iter().enumerate() {
            let image = s * b;
            let a = &basis_pinv * &image;
            if (b * &a) != image {
                return Err(Error::NotInvariant(format!("generator s{} leaves the lattice span", i + 1)));
            }
            let a = a
                .to_integer()
                .ok_or_else(|| Error::NotInvariant(format!("generator s{} does not preserve the lattice", i + 1)))?;
            if !a.is_unimodular() {
                return Err(Error::NotInvariant(format!("generator s{} is not unimodular on the lattice", i + 1)));
            }
            gen_actions.push(a);
        }
        let lat = InvariantLattice {
            spec,
            group,
            basis_pinv,
            gen_actions,
            actions: OnceLock::new(),
        };
        if !lat.is_faithful() {
            return Err(Error::NotInvariant("point group does not act faithfully".into()));
        }
        Ok(lat)
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn basis(&self) -> &RationalMatrix {
        &self.spec.basis
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn generator_actions(&self) -> &[IntegerMatrix] {
        &self.gen_actions
    }

    /// Integer matrices of every group element in lattice coordinates,
    /// indexed like the group's elements.
    pub fn actions(&self) -> &[IntegerMatrix] {
        self.actions.get_or_init(|| {
            let mut out: Vec<IntegerMatrix> = Vec::with_capacity(self.group.order());
            out.push(IntegerMatrix::identity(self.rank()));
            for g in 1..self.group.order() as Elem {
                let (p, i) = self.group.parent(g).expect("non-identity has a parent");
                let a = &out[p as usize] * &self.gen_actions[i];
                out.push(a);
            }
            out
        })
    }

    pub fn action(&self, g: Elem) -> &IntegerMatrix {
        &self.actions()[g as usize]
    }

    /// Lattice coordinates of a vector in the span, if it lies in the span.
    pub fn coordinates(&self, v: &RationalVector) -> Option<RationalVector> {
        let c = self.basis_pinv.mul_vec(v);
        (self.basis().mul_vec(&c) == *v).then_some(c)
    }

    pub fn from_coordinates(&self, c: &RationalVector) -> RationalVector {
        self.basis().mul_vec(c)
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        self.coordinates(v).is_some_and(|c| c.is_integral())
    }

    /// No non-identity element acts trivially.
    ///
    /// If the lattice span and the common fixed space together fill the
    /// ambient space this holds automatically; otherwise every element is checked.
    pub fn is_faithful(&self) -> bool {
        let n = self.group.dim();
        let id = RationalMatrix::identity(n);
        let stacked = self
            .group
            .generators()
            .iter()
            .map(|s| &id - s)
            .reduce(|a, b| a.vstack(&b))
            .expect("at least one generator");
        let fixed = stacked.nullspace();
        let mut span = self.basis().clone();
        if !fixed.is_empty() {
            span = span.hstack(&RationalMatrix::from_columns(n, &fixed));
        }
        if span.rank() == n {
            return true;
        }
        let id = IntegerMatrix::identity(self.rank());
        self.actions().iter().skip(1).all(|a| a != &id)
    }

    /// Whether the rational representation has a one-dimensional commutant.
    pub fn absolutely_irreducible(&self) -> bool {
        let mats: Vec<RationalMatrix> = self.gen_actions.iter().map(IntegerMatrix::to_rational).collect();
        commutant_dimension(&mats).is_ok_and(|d| d == 1)
    }
}

/// Whether `Q(R) ⊆ L ⊆ P(R)` and `L` is stable under the Weyl group.
pub fn check_invariant_sandwich(l: &LatticeSpec, r: &RootSystem) -> bool {
    if l.ambient_dim() != r.ambient_dim() || l.rank != r.rank() {
        return false;
    }
    let q = root_lattice(r);
    let p = weight_lattice(r);
    let contained = |sub: &RationalMatrix, sup: &RationalMatrix| lattice_index(sup, sub).is_ok();
    if !contained(&q.basis, &l.basis) || !contained(&l.basis, &p.basis) {
        return false;
    }
    r.simple_reflections()
        .iter()
        .all(|s| contained(&(s * &l.basis), &l.basis))
}

/// Absolute irreducibility of `L` under `W`.
pub fn absolutely_irreducible(l: &InvariantLattice) -> bool {
    l.absolutely_irreducible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{family_lattice, LatticeFamily, RootType};

    fn b3() -> (RootSystem, Arc<WeylGroup>) {
        let r = RootSystem::build(RootType::B, 3).unwrap();
        let w = Arc::new(WeylGroup::of_root_system(&r).unwrap());
        (r, w)
    }

    #[test]
    fn sandwich_examples() {
        let (r, _) = b3();
        assert!(!check_invariant_sandwich(&family_lattice(LatticeFamily::FL, 3).unwrap(), &r));
        assert!(check_invariant_sandwich(&root_lattice(&r), &r));
        let b4 = RootSystem::build(RootType::B, 4).unwrap();
        assert!(check_invariant_sandwich(&family_lattice(LatticeFamily::CCL, 4).unwrap(), &b4));
    }

    #[test]
    fn actions_follow_words() {
        let (r, w) = b3();
        let l = InvariantLattice::new(weight_lattice(&r), w.clone()).unwrap();
        for g in w.elements() {
            let m = w.matrix(g);
            let expect = &(&l.basis_pinv * &m) * l.basis();
            assert_eq!(l.action(g).to_rational(), expect);
        }
        assert!(l.absolutely_irreducible());
    }

    #[test]
    fn non_invariant_lattice_is_rejected() {
        let (_, w) = b3();
        let spec = LatticeSpec::new(
            LatticeFamily::CL,
            RationalMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]),
        )
        .unwrap();
        assert!(matches!(InvariantLattice::new(spec, w), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn trivial_action_is_reducible() {
        let w = Arc::new(WeylGroup::generate(&[RationalMatrix::identity(2)]).unwrap());
        let spec = LatticeSpec::new(LatticeFamily::CL, RationalMatrix::identity(2)).unwrap();
        let l = InvariantLattice::new(spec, w).unwrap();
        assert!(!l.absolutely_irreducible());
    }
}
