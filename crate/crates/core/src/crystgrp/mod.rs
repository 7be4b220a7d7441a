//! Crystallographic groups `W` with translation lattice `L` and point group `W0`.
//!
//! Translations are kept in lattice coordinates. For the vector system every
//! `t_g` is stored as an integer numerator vector `u_g` over a common
//! denominator `D`, reduced modulo `D` componentwise, which picks the
//! representative of `t_g + L` in the half-open unit cell of the lattice basis.

mod cohomology;
mod quotient;
mod solvers;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{int_ratio, lattice_from_generators, same_lattice, IntegerMatrix, RationalMatrix, RationalVector};
use crate::lattices::InvariantLattice;
use crate::rootsys::{LatticeFamily, RootType};
use crate::weyl::{Elem, WeylGroup};

pub use cohomology::{extension_classes, ExtensionClasses};
pub use quotient::{FiniteQuotient, DEFAULT_QUOTIENT_CEILING};
pub use solvers::{CommutingWitness, ReflectionProfile, SplitWitness};

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// Root system type, rank and lattice family of a group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyKey {
    pub root_type: RootType,
    pub rank: usize,
    pub lattice: LatticeFamily,
}

impl FamilyKey {
    pub fn new(root_type: RootType, rank: usize, lattice: LatticeFamily) -> Self {
        FamilyKey { root_type, rank, lattice }
    }

    /// Parses names such as `D6-FL` or `B4-CCL`.
    pub fn parse(s: &str) -> Result<Self> {
        let (sys, lat) = s
            .split_once('-')
            .ok_or_else(|| Error::UnsupportedFamily(s.into()))?;
        let (t, rank) = RootType::parse_label(sys)?;
        let rank = rank.ok_or_else(|| Error::UnsupportedFamily(s.into()))?;
        Ok(FamilyKey::new(t, rank, lat.parse()?))
    }
}

impl fmt::Display for FamilyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}-{}", self.root_type, self.rank, self.lattice)
    }
}

/// Translation parts of the Coxeter relators `s_i^2` and `(s_i s_j)^m` evaluated
/// on the elements `(t_i, s_i)`, in the ambient space.
///
/// These generate, together with their images under the point group, every
/// translation that the relations force into the group.
pub fn relator_translations(w: &WeylGroup, translations: &[RationalVector]) -> Vec<RationalVector> {
    let gens = w.generators();
    let cm = w.coxeter_matrix();
    let n = w.dim();
    let mut out = Vec::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let word: Vec<usize> = if i == j {
                vec![i, i]
            } else {
                (0..cm[i][j]).flat_map(|_| [i, j]).collect()
            };
            let mut prefix = RationalMatrix::identity(n);
            let mut t = RationalVector::zeros(n);
            for &s in &word {
                t = &t + &prefix.mul_vec(&translations[s]);
                prefix = &prefix * &gens[s];
            }
            out.push(t);
        }
    }
    out
}

/// The smallest lattice containing `base` that is stable under the point group
/// and contains every relator translation of `(t_i, s_i)`. Over it the
/// translations always define a group.
pub fn translation_closure(base: &RationalMatrix, w: &WeylGroup, translations: &[RationalVector]) -> RationalMatrix {
    let n = w.dim();
    let mut cols = base.columns();
    cols.extend(relator_translations(w, translations));
    let mut current = lattice_from_generators(&RationalMatrix::from_columns(n, &cols));
    loop {
        let mut next = current.columns();
        for s in w.generators() {
            next.extend((s * &current).columns());
        }
        let grown = lattice_from_generators(&RationalMatrix::from_columns(n, &next));
        if same_lattice(&grown, &current) {
            return current;
        }
        current = grown;
    }
}

/// An element `(v, g)` of a crystallographic group, acting as `x -> g x + v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    group_id: u64,
    /// Translation part in lattice coordinates.
    pub coords: RationalVector,
    /// Translation part in the ambient space.
    pub v: RationalVector,
    /// Point part.
    pub g: Elem,
}

impl GroupElement {
    pub fn group_id(&self) -> u64 {
        self.group_id
    }
}

/// A crystallographic group given by a lattice and a vector system.
#[derive(Debug)]
pub struct CrystGroup {
    id: u64,
    family: Option<FamilyKey>,
    rep: Option<usize>,
    lattice: Arc<InvariantLattice>,
    denom: BigInt,
    /// `u_g` with `t_g = u_g / denom` in lattice coordinates, entries in `[0, denom)`.
    vsys: Vec<Vec<BigInt>>,
    /// Generator translations as supplied, in lattice coordinates.
    gen_coords: Vec<RationalVector>,
    /// Cache for `reflection_like_involutions`.
    reflection_like: OnceLock<Vec<Elem>>,
}

fn reduce_mod(v: &mut [BigInt], d: &BigInt) {
    for x in v.iter_mut() {
        *x = x.mod_floor(d);
    }
}

impl CrystGroup {
    /// Builds `<(x, 1), (t_i, s_i)>` for `x` in the lattice.
    ///
    /// The vector system is propagated along the breadth-first words of the
    /// point group and then checked for word independence: for every element
    /// `g` and generator `s`, `t_{gs} = t_g + g t_s` modulo the lattice. This
    /// makes `g -> (t_g + L, g)` a homomorphism, which is the cocycle condition.
    pub fn build_from_generators(lattice: Arc<InvariantLattice>, translations: &[RationalVector]) -> Result<Self> {
        let w = lattice.group().clone();
        if translations.len() != w.num_generators() {
            return Err(Error::DimensionMismatch(format!(
                "{} translations for {} generators",
                translations.len(),
                w.num_generators()
            )));
        }
        if lattice.rank() == 0 {
            return Err(Error::DimensionMismatch("rank-0 lattice".into()));
        }
        let gen_coords = translations
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if t.len() != w.dim() {
                    return Err(Error::DimensionMismatch(format!("translation {} has wrong length", i + 1)));
                }
                lattice
                    .coordinates(t)
                    .ok_or_else(|| Error::DimensionMismatch(format!("translation {} leaves the lattice span", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let denom = gen_coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
        let gen_u: Vec<Vec<BigInt>> = gen_coords
            .iter()
            .map(|c| {
                let mut u: Vec<BigInt> = c
                    .entries()
                    .iter()
                    .map(|x| (x * int_ratio(&denom)).to_integer())
                    .collect();
                reduce_mod(&mut u, &denom);
                u
            })
            .collect();

        let k = lattice.rank();
        let actions = lattice.actions();
        let mut vsys: Vec<Vec<BigInt>> = Vec::with_capacity(w.order());
        vsys.push(vec![BigInt::zero(); k]);
        for g in 1..w.order() as Elem {
            let (p, i) = w.parent(g).expect("non-identity has a parent");
            let mut u = actions[p as usize].mul_vec(&gen_u[i]);
            for (x, y) in u.iter_mut().zip(&vsys[p as usize]) {
                *x += y;
            }
            reduce_mod(&mut u, &denom);
            vsys.push(u);
        }

        let group = CrystGroup {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            family: None,
            rep: None,
            lattice,
            denom,
            vsys,
            gen_coords,
            reflection_like: OnceLock::new(),
        };
        for g in w.elements() {
            for (i, ui) in gen_u.iter().enumerate() {
                let h = w.right_mul_gen(g, i);
                if !group.composes(g, ui, h) {
                    return Err(Error::InconsistentVectorSystem(format!(
                        "t(g s{}) differs from t(g) + g t(s{}) modulo the lattice for g with word {:?}",
                        i + 1,
                        i + 1,
                        w.word(g)
                    )));
                }
            }
        }
        Ok(group)
    }

    /// `u_h ≡ u_g + A_g u (mod D)`.
    fn composes(&self, g: Elem, u: &[BigInt], h: Elem) -> bool {
        let a = self.lattice.action(g);
        let mut lhs = a.mul_vec(u);
        for (x, y) in lhs.iter_mut().zip(&self.vsys[g as usize]) {
            *x += y;
        }
        lhs.iter()
            .zip(&self.vsys[h as usize])
            .all(|(x, y)| (x - y).is_multiple_of(&self.denom))
    }

    pub fn with_family(mut self, family: FamilyKey) -> Self {
        self.family = Some(family);
        self
    }

    /// Tags the group with its catalog family and representative index.
    pub fn with_label(mut self, family: FamilyKey, rep: usize) -> Self {
        self.family = Some(family);
        self.rep = Some(rep);
        self
    }

    pub fn family(&self) -> Option<FamilyKey> {
        self.family
    }

    pub fn rep_index(&self) -> Option<usize> {
        self.rep
    }

    /// `W1`, `W2`, ... for catalogued groups.
    pub fn name(&self) -> String {
        match (self.family, self.rep) {
            (Some(f), Some(r)) => format!("{f} W{r}"),
            (Some(f), None) => f.to_string(),
            _ => format!("group#{}", self.id),
        }
    }

    /// Involutions of the point group whose fixed and negated sublattices
    /// have mod-2 quotients of sizes `2^(rank - 1)` and `2`, in element order.
    pub fn reflection_like_involutions(&self) -> &[Elem] {
        self.reflection_like.get_or_init(|| {
            let w = self.point_group();
            let k = self.rank();
            w.elements()
                .filter(|&g| g != w.identity() && w.is_involution(g))
                .filter(|&g| {
                    self.reflection_coset_profile(g)
                        .is_ok_and(|p| p.fixed_mod2 == 1 << (k - 1) && p.negated_mod2 == 2)
                })
                .collect()
        })
    }

    /// `(v, w)` with `w` the point part as a word in the simple reflections.
    pub fn describe(&self, z: &GroupElement) -> String {
        let word = self.point_group().word(z.g);
        let w = if word.is_empty() {
            "1".to_string()
        } else {
            word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
        };
        format!("({}, {w})", z.v)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn lattice(&self) -> &Arc<InvariantLattice> {
        &self.lattice
    }

    pub fn point_group(&self) -> &Arc<WeylGroup> {
        self.lattice.group()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Common denominator of the vector system in lattice coordinates.
    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// Numerators `u_g` of the reduced vector system.
    pub fn vsys_numerators(&self, g: Elem) -> &[BigInt] {
        &self.vsys[g as usize]
    }

    /// Reduced `t_g` in lattice coordinates.
    pub fn t_coords(&self, g: Elem) -> RationalVector {
        RationalVector::new(
            self.vsys[g as usize]
                .iter()
                .map(|x| BigRational::new(x.clone(), self.denom.clone()))
                .collect(),
        )
    }

    /// Reduced `t_g` in the ambient space.
    pub fn t(&self, g: Elem) -> RationalVector {
        self.lattice.from_coordinates(&self.t_coords(g))
    }

    /// Generator translations as supplied, in the ambient space.
    pub fn generator_translations(&self) -> Vec<RationalVector> {
        self.gen_coords.iter().map(|c| self.lattice.from_coordinates(c)).collect()
    }

    fn make(&self, coords: RationalVector, g: Elem) -> GroupElement {
        let v = self.lattice.from_coordinates(&coords);
        GroupElement { group_id: self.id, coords, v, g }
    }

    /// `(t_i, s_i)` with the translation as supplied.
    pub fn generator(&self, i: usize) -> GroupElement {
        let g = self.point_group().generator(i);
        self.make(self.gen_coords[i].clone(), g)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.point_group().num_generators()).map(|i| self.generator(i)).collect()
    }

    /// `(t_g, g)` with the reduced translation.
    pub fn coset_rep(&self, g: Elem) -> GroupElement {
        self.make(self.t_coords(g), g)
    }

    pub fn identity(&self) -> GroupElement {
        self.make(RationalVector::zeros(self.rank()), 0)
    }

    /// The element `(v, g)`, provided it lies in the group.
    pub fn element(&self, v: &RationalVector, g: Elem) -> Result<GroupElement> {
        let c = self
            .lattice
            .coordinates(v)
            .ok_or_else(|| Error::DimensionMismatch("translation leaves the lattice span".into()))?;
        self.element_from_coords(c, g)
    }

    pub fn element_from_coords(&self, c: RationalVector, g: Elem) -> Result<GroupElement> {
        if (g as usize) >= self.point_group().order() {
            return Err(Error::DimensionMismatch("unknown point-group element".into()));
        }
        if !(&c - &self.t_coords(g)).is_integral() {
            return Err(Error::NotASublattice("translation is not in the coset of g".into()));
        }
        Ok(self.make(c, g))
    }

    /// The pure translation `(x, 1)` for `x` in lattice coordinates.
    pub fn translation(&self, x: &[BigInt]) -> GroupElement {
        self.make(RationalVector::from_integers(x), 0)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.group_id != self.id {
            return Err(Error::MixedParents);
        }
        Ok(())
    }

    /// `(v, g)(v', h) = (v + g v', g h)`.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let moved = self.lattice.action(a.g).mul_rational_vec(&b.coords);
        Ok(self.make(&a.coords + &moved, self.point_group().mul(a.g, b.g)))
    }

    /// `(v, g)^{-1} = (-g^{-1} v, g^{-1})`.
    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let gi = self.point_group().inverse(a.g);
        let moved = self.lattice.action(gi).mul_rational_vec(&a.coords);
        Ok(self.make(-&moved, gi))
    }

    pub fn square(&self, a: &GroupElement) -> Result<GroupElement> {
        self.multiply(a, a)
    }

    /// `a b a^{-1} b^{-1} = 1`.
    pub fn commute(&self, a: &GroupElement, b: &GroupElement) -> Result<bool> {
        Ok(self.multiply(a, b)? == self.multiply(b, a)?)
    }

    /// Whether `a` lies in the same `T`-coset as `b`.
    pub fn same_coset(&self, a: &GroupElement, b: &GroupElement) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.g == b.g && (&a.coords - &b.coords).is_integral())
    }

    /// Checks `t_{gh} - t_g - g t_h ∈ L` for every pair.
    pub fn check_cocycle_exhaustive(&self) -> Result<()> {
        let w = self.point_group();
        for g in w.elements() {
            for h in w.elements() {
                self.check_pair(g, h)?;
            }
        }
        Ok(())
    }

    /// Checks the cocycle condition on `samples` pairs spread over `W0 x W0`.
    pub fn check_cocycle_sampled(&self, samples: usize) -> Result<()> {
        let n = self.point_group().order() as u64;
        // two strides coprime to n walk g and h through different orders
        let stride = |seed: u64| (seed..).find(|s| s.gcd(&n) == 1).unwrap_or(1);
        let (a, b) = (stride(7919), stride(104_729));
        for i in 0..samples as u64 {
            let g = ((i * a) % n) as Elem;
            let h = ((i * b + i / n) % n) as Elem;
            self.check_pair(g, h)?;
        }
        Ok(())
    }

    fn check_pair(&self, g: Elem, h: Elem) -> Result<()> {
        let gh = self.point_group().mul(g, h);
        if self.composes(g, &self.vsys[h as usize], gh) {
            Ok(())
        } else {
            Err(Error::InconsistentVectorSystem(format!("cocycle fails at ({g}, {h})")))
        }
    }

    /// Integer matrix of `g` on the lattice.
    pub fn action(&self, g: Elem) -> &IntegerMatrix {
        self.lattice.action(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ratio;
    use crate::rootsys::{family_lattice, RootSystem};

    fn lattice(t: RootType, l: usize, f: LatticeFamily) -> Arc<InvariantLattice> {
        let r = RootSystem::build(t, l).unwrap();
        let w = Arc::new(WeylGroup::of_root_system(&r).unwrap());
        Arc::new(InvariantLattice::new(family_lattice(f, l).unwrap(), w).unwrap())
    }

    fn e(n: usize, i: usize) -> RationalVector {
        RationalVector::unit(n, i)
    }

    #[test]
    fn split_group_has_zero_vector_system() {
        let l = lattice(RootType::B, 3, LatticeFamily::CL);
        let w = CrystGroup::build_from_generators(l, &vec![RationalVector::zeros(3); 3]).unwrap();
        assert!(w.point_group().elements().all(|g| w.t(g).is_zero()));
        w.check_cocycle_exhaustive().unwrap();
    }

    #[test]
    fn corrupted_generator_is_rejected() {
        let l = lattice(RootType::B, 3, LatticeFamily::CL);
        let mut t = vec![RationalVector::zeros(3); 3];
        t[0] = e(3, 0).scale(&ratio(1, 2));
        let err = CrystGroup::build_from_generators(l, &t).unwrap_err();
        assert!(matches!(err, Error::InconsistentVectorSystem(_)));
    }

    #[test]
    fn d6_square_of_generator() {
        let l = lattice(RootType::D, 6, LatticeFamily::FL);
        let w = CrystGroup::build_from_generators(l, &vec![e(6, 0); 6]).unwrap();
        let z = w.generator(4);
        let sq = w.square(&z).unwrap();
        assert_eq!(sq.g, 0);
        assert_eq!(sq.v, e(6, 0).scale(&ratio(2, 1)));
    }

    #[test]
    fn inverse_and_mixing() {
        let l = lattice(RootType::B, 3, LatticeFamily::CL);
        let half = RationalVector::new(vec![ratio(1, 2); 3]);
        let w = CrystGroup::build_from_generators(l.clone(), &vec![half.clone(); 3]).unwrap();
        for g in w.point_group().elements() {
            let a = w.coset_rep(g);
            let inv = w.invert(&a).unwrap();
            assert_eq!(w.multiply(&inv, &a).unwrap(), w.identity());
        }
        let x = w.translation(&[1.into(), 0.into(), 0.into()]);
        let y = w.translation(&[0.into(), 2.into(), 0.into()]);
        assert_eq!(w.multiply(&x, &y).unwrap().v, RationalVector::from_i64(&[1, 2, 0]));
        let other = CrystGroup::build_from_generators(l, &vec![half; 3]).unwrap();
        assert_eq!(w.multiply(&x, &other.identity()), Err(Error::MixedParents));
    }

    #[test]
    fn family_names() {
        let k = FamilyKey::parse("D6-FL").unwrap();
        assert_eq!(k, FamilyKey::new(RootType::D, 6, LatticeFamily::FL));
        assert_eq!(k.to_string(), "D6-FL");
        assert!(FamilyKey::parse("D6").is_err());
    }
}
