//! Root systems in Bourbaki's standard realizations and the lattices built
//! from them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::{
    lattice_contains, lattice_from_generators, ratio, RationalMatrix, RationalVector,
};

/// Cartan-Killing type of an irreducible reduced root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootType {
    pub fn letter(self) -> char {
        match self {
            RootType::A => 'A',
            RootType::B => 'B',
            RootType::C => 'C',
            RootType::D => 'D',
            RootType::E => 'E',
            RootType::F => 'F',
            RootType::G => 'G',
        }
    }

    /// Whether `(self, rank)` names a reduced irreducible system we build.
    pub fn admits(self, rank: usize) -> bool {
        match self {
            RootType::A => rank >= 1,
            RootType::B | RootType::C => rank >= 2,
            RootType::D => rank >= 3,
            RootType::E => (6..=8).contains(&rank),
            RootType::F => rank == 4,
            RootType::G => rank == 2,
        }
    }

    /// Label such as `B3` or `E6`.
    pub fn label(self, rank: usize) -> String {
        format!("{}{}", self.letter(), rank)
    }

    /// Parses labels like `B`, `b`, `E6` or `F4`; the embedded rank, if any, is returned too.
    pub fn parse_label(s: &str) -> Result<(RootType, Option<usize>)> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::UnsupportedType(s.into()))?;
        let t = match letter.to_ascii_uppercase() {
            'A' => RootType::A,
            'B' => RootType::B,
            'C' => RootType::C,
            'D' => RootType::D,
            'E' => RootType::E,
            'F' => RootType::F,
            'G' => RootType::G,
            _ => return Err(Error::UnsupportedType(s.into())),
        };
        let rest = chars.as_str();
        if rest.is_empty() {
            return Ok((t, None));
        }
        let rank = rest.parse().map_err(|_| Error::UnsupportedType(s.into()))?;
        Ok((t, Some(rank)))
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match RootType::parse_label(s)? {
            (t, None) => Ok(t),
            _ => Err(Error::UnsupportedType(s.into())),
        }
    }
}

fn half(n: i64) -> BigRational {
    ratio(n, 2)
}

fn eps(n: usize, i: usize) -> RationalVector {
    RationalVector::unit(n, i)
}

fn vec_from(n: usize, entries: &[(usize, BigRational)]) -> RationalVector {
    let mut v = vec![BigRational::zero(); n];
    for (i, x) in entries {
        v[*i] += x;
    }
    RationalVector::new(v)
}

fn bourbaki_simple_roots(t: RootType, l: usize) -> (usize, Vec<RationalVector>) {
    let one = || BigRational::one();
    let m1 = || -BigRational::one();
    // ε_i - ε_{i+1} with zero-based i
    let diff = |n: usize, i: usize| vec_from(n, &[(i, one()), (i + 1, m1())]);
    match t {
        RootType::A => {
            let n = l + 1;
            (n, (0..l).map(|i| diff(n, i)).collect())
        }
        RootType::B | RootType::C | RootType::D => {
            let mut roots: Vec<_> = (0..l - 1).map(|i| diff(l, i)).collect();
            roots.push(match t {
                RootType::B => eps(l, l - 1),
                RootType::C => eps(l, l - 1).scale(&ratio(2, 1)),
                _ => vec_from(l, &[(l - 2, one()), (l - 1, one())]),
            });
            (l, roots)
        }
        RootType::E => {
            let n = 8;
            let mut a1 = vec![half(-1); n];
            a1[0] = half(1);
            a1[7] = half(1);
            let mut roots = vec![
                RationalVector::new(a1),
                vec_from(n, &[(0, one()), (1, one())]),
            ];
            for k in 3..=l {
                // α_k = ε_{k-1} - ε_{k-2} in one-based indices
                roots.push(vec_from(n, &[(k - 2, one()), (k - 3, m1())]));
            }
            (n, roots)
        }
        RootType::F => {
            let n = 4;
            (
                n,
                vec![
                    diff(n, 1),
                    diff(n, 2),
                    eps(n, 3),
                    RationalVector::new(vec![half(1), half(-1), half(-1), half(-1)]),
                ],
            )
        }
        RootType::G => {
            let n = 3;
            (
                n,
                vec![
                    diff(n, 0),
                    RationalVector::new(vec![ratio(-2, 1), one(), one()]),
                ],
            )
        }
    }
}

/// A reduced root system realized in an explicit Euclidean space with the
/// standard dot product.
#[derive(Clone, Debug)]
pub struct RootSystem {
    root_type: Option<RootType>,
    rank: usize,
    ambient_dim: usize,
    simple_roots: Vec<RationalVector>,
    roots: Vec<RationalVector>,
}

impl RootSystem {
    /// Builds the root system of the given type and rank.
    pub fn build(t: RootType, l: usize) -> Result<Self> {
        if !t.admits(l) {
            return Err(Error::UnsupportedType(t.label(l)));
        }
        let (n, simple) = bourbaki_simple_roots(t, l);
        let mut r = Self::from_simple_roots(n, simple)?;
        r.root_type = Some(t);
        Ok(r)
    }

    /// Root system generated by arbitrary simple roots (used for reducible controls).
    ///
    /// The vectors must be linearly independent and pairwise at obtuse or right angles
    /// with integral Cartan entries; the root set is their orbit under the simple reflections.
    pub fn from_simple_roots(ambient_dim: usize, simple_roots: Vec<RationalVector>) -> Result<Self> {
        if simple_roots.is_empty() || simple_roots.iter().any(|a| a.len() != ambient_dim || a.is_zero()) {
            return Err(Error::DimensionMismatch("simple roots must be nonzero vectors of the ambient dimension".into()));
        }
        let b = RationalMatrix::from_columns(ambient_dim, &simple_roots);
        if b.rank() != simple_roots.len() {
            return Err(Error::DimensionMismatch("simple roots are linearly dependent".into()));
        }
        let reflections: Vec<RationalMatrix> = simple_roots.iter().map(reflection_of).collect();
        let mut seen: BTreeSet<RationalVector> = simple_roots.iter().cloned().collect();
        let mut roots = simple_roots.clone();
        let mut queue: VecDeque<RationalVector> = simple_roots.iter().cloned().collect();
        while let Some(r) = queue.pop_front() {
            for s in &reflections {
                let img = s.mul_vec(&r);
                if seen.insert(img.clone()) {
                    roots.push(img.clone());
                    queue.push_back(img);
                }
            }
        }
        Ok(RootSystem {
            root_type: None,
            rank: simple_roots.len(),
            ambient_dim,
            simple_roots,
            roots,
        })
    }

    pub fn root_type(&self) -> Option<RootType> {
        self.root_type
    }

    /// `B3`, `E6`, or `custom` for synthetic systems.
    pub fn label(&self) -> String {
        self.root_type
            .map_or_else(|| "custom".to_string(), |t| t.label(self.rank))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn simple_roots(&self) -> &[RationalVector] {
        &self.simple_roots
    }

    /// All roots, in breadth-first orbit order starting from the simple roots.
    pub fn roots(&self) -> &[RationalVector] {
        &self.roots
    }

    /// Simple roots as the columns of an `ambient_dim x rank` matrix.
    pub fn simple_root_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(self.ambient_dim, &self.simple_roots)
    }

    pub fn is_root(&self, v: &RationalVector) -> bool {
        self.roots.contains(v)
    }

    /// `α^∨ = 2α/(α,α)`.
    pub fn coroot(&self, alpha: &RationalVector) -> Result<RationalVector> {
        if !self.is_root(alpha) {
            return Err(Error::NotARoot);
        }
        Ok(alpha.scale(&(ratio(2, 1) / alpha.dot(alpha))))
    }

    /// `α^∨(β) = 2(β,α)/(α,α)`.
    pub fn pairing(alpha: &RationalVector, beta: &RationalVector) -> BigRational {
        ratio(2, 1) * beta.dot(alpha) / alpha.dot(alpha)
    }

    pub fn reflection_matrix(&self, alpha: &RationalVector) -> Result<RationalMatrix> {
        if !self.is_root(alpha) {
            return Err(Error::NotARoot);
        }
        Ok(reflection_of(alpha))
    }

    pub fn simple_reflections(&self) -> Vec<RationalMatrix> {
        self.simple_roots.iter().map(reflection_of).collect()
    }

    /// Coordinates of `v` in the basis of simple roots.
    pub fn simple_coordinates(&self, v: &RationalVector) -> Option<RationalVector> {
        self.simple_root_matrix().solve(v)
    }

    /// Roots whose simple-root coordinates are non-negative.
    pub fn positive_roots(&self) -> Vec<RationalVector> {
        self.roots
            .iter()
            .filter(|r| {
                self.simple_coordinates(r)
                    .is_some_and(|c| c.entries().iter().all(|x| !x.is_negative()))
            })
            .cloned()
            .collect()
    }

    /// Cartan matrix `a_ij = α_i^∨(α_j)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<BigInt>> {
        self.simple_roots
            .iter()
            .map(|a| {
                self.simple_roots
                    .iter()
                    .map(|b| Self::pairing(a, b).to_integer())
                    .collect()
            })
            .collect()
    }

    /// Fundamental weights as columns: `(ω_i, α_j^∨) = δ_ij`, inside the span of the roots.
    pub fn fundamental_weights(&self) -> RationalMatrix {
        let b = self.simple_root_matrix();
        let g = &b.transpose() * &b;
        let d_inv = RationalMatrix::diagonal(
            &self
                .simple_roots
                .iter()
                .map(|a| a.dot(a) / ratio(2, 1))
                .collect::<Vec<_>>(),
        );
        let g_inv = g.inverse().expect("Gram matrix of a basis is invertible");
        &b * &(&g_inv * &d_inv)
    }
}

/// `I - 2 α α^T / (α, α)`.
pub fn reflection_of(alpha: &RationalVector) -> RationalMatrix {
    let n = alpha.len();
    let k = ratio(2, 1) / alpha.dot(alpha);
    RationalMatrix::from_fn(n, n, |r, c| {
        let delta = if r == c { BigRational::one() } else { BigRational::zero() };
        delta - &k * &alpha[r] * &alpha[c]
    })
}

/// Named lattice families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeFamily {
    /// `Z^l`.
    CL,
    /// `Z^l + Z·½Σε_i`.
    CCL,
    /// Integer vectors with even coordinate sum.
    FL,
    /// `FL + Z·½Σε_i`.
    Omega,
    /// `Q(A_l) + Z·a ω_1` with `a` dividing `l + 1`.
    Lambda(u32),
    Q6,
    P6,
    Q7,
    P7,
    /// Root lattice of a given root system.
    QofR,
    /// Weight lattice of a given root system.
    PofR,
    /// Translation lattice generated by a group's relators.
    Generated,
}

impl LatticeFamily {
    pub fn name(self) -> String {
        match self {
            LatticeFamily::CL => "CL".into(),
            LatticeFamily::CCL => "CCL".into(),
            LatticeFamily::FL => "FL".into(),
            LatticeFamily::Omega => "Omega".into(),
            LatticeFamily::Lambda(a) => format!("Lambda{a}"),
            LatticeFamily::Q6 => "Q6".into(),
            LatticeFamily::P6 => "P6".into(),
            LatticeFamily::Q7 => "Q7".into(),
            LatticeFamily::P7 => "P7".into(),
            LatticeFamily::QofR => "Q".into(),
            LatticeFamily::PofR => "P".into(),
            LatticeFamily::Generated => "generated".into(),
        }
    }

    /// Membership predicate for the families with an explicit coordinate description.
    pub fn contains(self, v: &RationalVector) -> Option<bool> {
        let integral = v.is_integral();
        let sum_even = || {
            let s: BigRational = v.entries().iter().sum();
            s.is_integer() && (s.to_integer() % BigInt::from(2)).is_zero()
        };
        let shifted_integral = || {
            let h = half(1);
            v.entries().iter().all(|x| (x - &h).is_integer())
        };
        match self {
            LatticeFamily::CL => Some(integral),
            LatticeFamily::CCL => Some(integral || shifted_integral()),
            LatticeFamily::FL => Some(integral && sum_even()),
            LatticeFamily::Omega => {
                let h = RationalVector::new(vec![half(1); v.len()]);
                Some((integral && sum_even()) || ({
                    let w = v - &h;
                    w.is_integral() && {
                        let s: BigRational = w.entries().iter().sum();
                        (s.to_integer() % BigInt::from(2)).is_zero()
                    }
                }))
            }
            _ => None,
        }
    }
}

impl fmt::Display for LatticeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for LatticeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        Ok(match t.to_ascii_uppercase().as_str() {
            "CL" => LatticeFamily::CL,
            "CCL" => LatticeFamily::CCL,
            "FL" => LatticeFamily::FL,
            "OMEGA" => LatticeFamily::Omega,
            "Q6" => LatticeFamily::Q6,
            "P6" => LatticeFamily::P6,
            "Q7" => LatticeFamily::Q7,
            "P7" => LatticeFamily::P7,
            "Q" => LatticeFamily::QofR,
            "P" => LatticeFamily::PofR,
            "GENERATED" => LatticeFamily::Generated,
            u if u.starts_with("LAMBDA") => {
                let a = u["LAMBDA".len()..]
                    .trim_start_matches(['_', '-'])
                    .parse()
                    .map_err(|_| Error::UnsupportedFamily(t.into()))?;
                LatticeFamily::Lambda(a)
            }
            _ => return Err(Error::UnsupportedFamily(t.into())),
        })
    }
}

/// A full-rank lattice inside the span of a root system, with its family tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub family: LatticeFamily,
    pub rank: usize,
    /// Basis vectors as columns, `ambient_dim x rank`.
    pub basis: RationalMatrix,
}

impl LatticeSpec {
    pub fn new(family: LatticeFamily, basis: RationalMatrix) -> Result<Self> {
        if basis.cols() == 0 {
            return Err(Error::DimensionMismatch("lattice of rank 0".into()));
        }
        if basis.rank() != basis.cols() {
            return Err(Error::DimensionMismatch("lattice basis is linearly dependent".into()));
        }
        Ok(LatticeSpec { family, rank: basis.cols(), basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        lattice_contains(&self.basis, v)
    }

    /// Canonical Hermite basis, equal for equal lattices.
    pub fn canonical_basis(&self) -> RationalMatrix {
        lattice_from_generators(&self.basis)
    }

    pub fn same_lattice(&self, other: &LatticeSpec) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.canonical_basis() == other.canonical_basis()
    }

    /// The lattice `k L`.
    pub fn scaled(&self, k: &BigRational) -> LatticeSpec {
        LatticeSpec { family: self.family, rank: self.rank, basis: self.basis.scale(k) }
    }
}

/// `Q(R)`: the Z-span of the roots, with the simple roots as basis.
pub fn root_lattice(r: &RootSystem) -> LatticeSpec {
    LatticeSpec::new(LatticeFamily::QofR, r.simple_root_matrix()).expect("simple roots form a basis")
}

/// `P(R)`: the Z-span of the fundamental weights.
pub fn weight_lattice(r: &RootSystem) -> LatticeSpec {
    LatticeSpec::new(LatticeFamily::PofR, r.fundamental_weights()).expect("weights form a basis")
}

fn sum_vector(n: usize, upto: usize, k: &BigRational) -> RationalVector {
    RationalVector::new((0..n).map(|i| if i < upto { k.clone() } else { BigRational::zero() }).collect())
}

/// `½(ε1 + ε8 - ε2 - ... - ε7)` in `R^8`.
fn e_half_vector() -> RationalVector {
    let mut v = vec![half(-1); 8];
    v[0] = half(1);
    v[7] = half(1);
    RationalVector::new(v)
}

fn eps_sum(n: usize, i: usize, j: usize) -> RationalVector {
    &eps(n, i) + &eps(n, j)
}

/// Generators of the named family in rank `l`, as listed in the standard nomenclature.
pub fn family_generators(family: LatticeFamily, l: usize) -> Result<(usize, Vec<RationalVector>)> {
    let bad = || Error::UnsupportedFamily(format!("{}{}", family.name(), l));
    if l == 0 {
        return Err(bad());
    }
    let gens = match family {
        LatticeFamily::CL => (l, (0..l).map(|i| eps(l, i)).collect()),
        LatticeFamily::CCL => {
            let mut g: Vec<_> = (0..l - 1).map(|i| eps(l, i)).collect();
            g.push(sum_vector(l, l, &half(1)));
            (l, g)
        }
        LatticeFamily::FL | LatticeFamily::Omega => {
            if l < 2 {
                return Err(bad());
            }
            let mut g: Vec<_> = (0..l - 1).map(|i| &eps(l, i) - &eps(l, i + 1)).collect();
            g.push(eps_sum(l, l - 2, l - 1));
            if family == LatticeFamily::Omega {
                g.push(sum_vector(l, l, &half(1)));
            }
            (l, g)
        }
        LatticeFamily::Lambda(a) => {
            let n = l + 1;
            if a == 0 || !n.is_multiple_of(a as usize) {
                return Err(bad());
            }
            let a = a as i64;
            let mut g: Vec<_> = (0..l - 1).map(|i| &eps(n, i) - &eps(n, i + 1)).collect();
            let mut last = sum_vector(n, n, &ratio(-a, n as i64)).into_entries();
            last[0] += ratio(a, 1);
            g.push(RationalVector::new(last));
            (n, g)
        }
        LatticeFamily::Q6 | LatticeFamily::P6 | LatticeFamily::Q7 | LatticeFamily::P7 => {
            let (rank, sums) = match family {
                LatticeFamily::Q6 => (6, 5),
                LatticeFamily::P6 => (6, 4),
                LatticeFamily::Q7 => (7, 6),
                _ => (7, 5),
            };
            if l != rank {
                return Err(bad());
            }
            let mut g: Vec<_> = (0..sums).map(|i| eps_sum(8, 0, i)).collect();
            g.push(e_half_vector());
            match family {
                LatticeFamily::P6 => {
                    let mut v = eps_sum(8, 0, 4).into_entries();
                    v[5] += ratio(2, 3);
                    v[6] += ratio(2, 3);
                    v[7] -= ratio(2, 3);
                    g.push(RationalVector::new(v));
                }
                LatticeFamily::P7 => g.push(sum_vector(8, 6, &half(1))),
                _ => {}
            }
            (8, g)
        }
        LatticeFamily::QofR | LatticeFamily::PofR | LatticeFamily::Generated => return Err(bad()),
    };
    Ok(gens)
}

/// The lattice of a named family in rank `l`.
///
/// When the listed generators are a basis they are used verbatim; otherwise
/// (FL and Omega) the canonical Hermite basis of their span is used.
pub fn family_lattice(family: LatticeFamily, l: usize) -> Result<LatticeSpec> {
    let (n, gens) = family_generators(family, l)?;
    let m = RationalMatrix::from_columns(n, &gens);
    let basis = if m.rank() == m.cols() { m } else { lattice_from_generators(&m) };
    if basis.cols() != l {
        return Err(Error::UnsupportedFamily(format!("{}{}", family.name(), l)));
    }
    LatticeSpec::new(family, basis)
}

/// Whether the root system is irreducible (its Coxeter diagram is connected).
pub fn is_irreducible(r: &RootSystem) -> bool {
    let m = crate::weyl::coxeter_matrix_of(&r.simple_reflections());
    let l = r.rank();
    let mut seen = vec![false; l];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..l {
            if !seen[j] && m[i][j] >= 3 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
