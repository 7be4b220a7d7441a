//! Finite reflection groups generated by explicit matrices.
//!
//! Elements are stored as integer matrices in the coordinates of a lattice
//! that the generators preserve, so products and equality tests never touch
//! rationals. Ambient matrices are recovered on demand.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::exactla::{lattice_from_generators, IntegerMatrix, RationalMatrix};
use crate::rootsys::RootSystem;

/// Default element ceiling for [`WeylGroup::generate`].
pub const DEFAULT_ELEMENT_CEILING: usize = 2_000_000;

/// Node limit for the brute-force automorphism search.
pub const DIAGRAM_NODE_LIMIT: usize = 10;

/// Element handle: an index into the canonical element list.
pub type Elem = u32;

/// A finite matrix group with a fixed generating set.
#[derive(Debug)]
pub struct WeylGroup {
    dim: usize,
    generators: Vec<RationalMatrix>,
    /// Columns span a lattice stable under the generators.
    basis: RationalMatrix,
    basis_inv: RationalMatrix,
    coords: Vec<IntegerMatrix>,
    words: Vec<Box<[u8]>>,
    /// BFS parent: `g = parent[g] * s_{last letter of w_g}`.
    parents: Vec<Elem>,
    layer_starts: Vec<usize>,
    /// `right[g * ngens + i]` is the index of `g s_i`.
    right: Vec<Elem>,
    inverse: Vec<Elem>,
    lookup: HashMap<u64, Vec<Elem>>,
    coxeter: Vec<Vec<u32>>,
}

fn fingerprint(m: &IntegerMatrix) -> u64 {
    let mut h = DefaultHasher::new();
    m.hash(&mut h);
    h.finish()
}

/// Smallest lattice containing `Z^n` and stable under the matrices.
fn stable_lattice(n: usize, gens: &[RationalMatrix]) -> RationalMatrix {
    let mut basis = RationalMatrix::identity(n);
    loop {
        let mut cols = basis.columns();
        for s in gens {
            cols.extend((s * &basis).columns());
        }
        let next = lattice_from_generators(&RationalMatrix::from_columns(n, &cols));
        if next == basis {
            return basis;
        }
        basis = next;
    }
}

/// Multiplicative order of a square matrix, or `None` above `limit`.
fn matrix_order(m: &RationalMatrix, limit: u32) -> Option<u32> {
    let mut p = m.clone();
    for k in 1..=limit {
        if p.is_identity() {
            return Some(k);
        }
        p = &p * m;
    }
    None
}

/// Coxeter matrix `m(i, j) = order(s_i s_j)` of a list of involutions.
///
/// Infinite orders (beyond 10 000) are reported as 0.
pub fn coxeter_matrix_of(gens: &[RationalMatrix]) -> Vec<Vec<u32>> {
    let l = gens.len();
    let mut m = vec![vec![1; l]; l];
    for i in 0..l {
        for j in i + 1..l {
            let o = matrix_order(&(&gens[i] * &gens[j]), 10_000).unwrap_or(0);
            m[i][j] = o;
            m[j][i] = o;
        }
    }
    m
}

impl WeylGroup {
    /// The Weyl group of a root system, generated by its simple reflections.
    pub fn of_root_system(r: &RootSystem) -> Result<Self> {
        Self::generate(&r.simple_reflections())
    }

    pub fn generate(gens: &[RationalMatrix]) -> Result<Self> {
        Self::generate_with_ceiling(gens, DEFAULT_ELEMENT_CEILING)
    }

    /// Enumerates the group generated by `gens` breadth-first.
    ///
    /// Within a layer elements are sorted lexicographically by their lattice
    /// coordinates; each element's word is its first parent's word followed by
    /// the generator that reached it.
    pub fn generate_with_ceiling(gens: &[RationalMatrix], ceiling: usize) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::DimensionMismatch("no generators".into()));
        };
        let n = first.rows();
        if gens.iter().any(|g| g.rows() != n || g.cols() != n) {
            return Err(Error::DimensionMismatch("generators must be square of equal size".into()));
        }
        if gens.len() > u8::MAX as usize {
            return Err(Error::DimensionMismatch("too many generators".into()));
        }
        if gens.iter().any(|g| g.inverse().is_none()) {
            return Err(Error::DimensionMismatch("generators must be invertible".into()));
        }
        let basis = stable_lattice(n, gens);
        let basis_inv = basis.inverse().expect("lattice basis is invertible");
        let gen_coords: Vec<IntegerMatrix> = gens
            .iter()
            .map(|g| {
                (&(&basis_inv * g) * &basis)
                    .to_integer()
                    .expect("generators preserve the stable lattice")
            })
            .collect();
        let ngens = gens.len();

        let identity = IntegerMatrix::identity(n);
        let mut lookup: HashMap<u64, Vec<Elem>> = HashMap::new();
        lookup.entry(fingerprint(&identity)).or_default().push(0);
        let mut coords = vec![identity];
        let mut words: Vec<Box<[u8]>> = vec![Box::new([])];
        let mut parents: Vec<Elem> = vec![0];
        let mut layer_starts = vec![0];
        let mut right: Vec<Elem> = Vec::new();

        let find = |lookup: &HashMap<u64, Vec<Elem>>, coords: &[IntegerMatrix], m: &IntegerMatrix, h: u64| {
            lookup
                .get(&h)
                .and_then(|b| b.iter().copied().find(|&i| &coords[i as usize] == m))
        };

        let mut layer = 0..1;
        loop {
            // products of the current layer; new ones are collected unsorted first
            let mut fresh: Vec<(IntegerMatrix, u64, Elem, u8)> = Vec::new();
            let mut fresh_index: HashMap<u64, Vec<usize>> = HashMap::new();
            // entries of `right` for this layer: Ok(known) or Err(position in fresh)
            let mut pending: Vec<std::result::Result<Elem, usize>> = Vec::with_capacity(layer.len() * ngens);
            for g in layer.clone() {
                for (i, s) in gen_coords.iter().enumerate() {
                    let p = &coords[g] * s;
                    let h = fingerprint(&p);
                    if let Some(k) = find(&lookup, &coords, &p, h) {
                        pending.push(Ok(k));
                        continue;
                    }
                    let slot = fresh_index.entry(h).or_default();
                    if let Some(&pos) = slot.iter().find(|&&pos| fresh[pos].0 == p) {
                        pending.push(Err(pos));
                    } else {
                        slot.push(fresh.len());
                        pending.push(Err(fresh.len()));
                        fresh.push((p, h, g as Elem, i as u8));
                    }
                }
            }
            if coords.len() + fresh.len() > ceiling {
                return Err(Error::GroupTooLarge { ceiling });
            }
            let mut order: Vec<usize> = (0..fresh.len()).collect();
            order.sort_by(|&a, &b| fresh[a].0.cmp(&fresh[b].0));
            let base = coords.len();
            let mut final_index = vec![0 as Elem; fresh.len()];
            for (rank, &pos) in order.iter().enumerate() {
                final_index[pos] = (base + rank) as Elem;
            }
            right.extend(pending.into_iter().map(|e| match e {
                Ok(k) => k,
                Err(pos) => final_index[pos],
            }));
            if fresh.is_empty() {
                break;
            }
            let mut fresh: Vec<Option<(IntegerMatrix, u64, Elem, u8)>> = fresh.into_iter().map(Some).collect();
            for &pos in &order {
                let (m, h, parent, gen) = fresh[pos].take().expect("each fresh element placed once");
                let idx = coords.len() as Elem;
                lookup.entry(h).or_default().push(idx);
                let mut w = words[parent as usize].to_vec();
                w.push(gen);
                words.push(w.into_boxed_slice());
                parents.push(parent);
                coords.push(m);
            }
            layer_starts.push(base);
            layer = base..coords.len();
        }

        let mut group = WeylGroup {
            dim: n,
            generators: gens.to_vec(),
            basis,
            basis_inv,
            coords,
            words,
            parents,
            layer_starts,
            right,
            inverse: Vec::new(),
            lookup,
            coxeter: Vec::new(),
        };
        group.inverse = (0..group.order())
            .map(|g| {
                group.words[g]
                    .iter()
                    .rev()
                    .fold(0, |acc, &i| group.right_mul_gen(acc, i as usize))
            })
            .collect();
        group.coxeter = (0..ngens)
            .map(|i| {
                (0..ngens)
                    .map(|j| {
                        let sij = group.mul(group.generator(i), group.generator(j));
                        group.element_order(sij)
                    })
                    .collect()
            })
            .collect();
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.coords.len()
    }

    /// Dimension of the space the group acts on.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[RationalMatrix] {
        &self.generators
    }

    pub fn identity(&self) -> Elem {
        0
    }

    /// Element index of the `i`th generator.
    pub fn generator(&self, i: usize) -> Elem {
        self.right_mul_gen(0, i)
    }

    /// Index of `g s_i`.
    pub fn right_mul_gen(&self, g: Elem, i: usize) -> Elem {
        self.right[g as usize * self.generators.len() + i]
    }

    /// Index of `s_i g`, computed as `(g^{-1} s_i)^{-1}`.
    pub fn left_mul_gen(&self, i: usize, g: Elem) -> Elem {
        self.inverse(self.right_mul_gen(self.inverse(g), i))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.words[b as usize]
            .iter()
            .fold(a, |acc, &i| self.right_mul_gen(acc, i as usize))
    }

    pub fn inverse(&self, g: Elem) -> Elem {
        self.inverse[g as usize]
    }

    /// `g^k` for `k >= 0`.
    pub fn pow(&self, g: Elem, k: u64) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: Elem) -> u32 {
        let mut p = g;
        let mut k = 1;
        while p != 0 {
            p = self.mul(p, g);
            k += 1;
        }
        k
    }

    pub fn is_involution(&self, g: Elem) -> bool {
        g != 0 && self.mul(g, g) == 0
    }

    /// Generator word `w_g` with `g = s_{w[0]} s_{w[1]} ...`.
    pub fn word(&self, g: Elem) -> Vec<usize> {
        self.words[g as usize].iter().map(|&i| i as usize).collect()
    }

    /// BFS parent and the generator that reached `g`; `None` for the identity.
    pub fn parent(&self, g: Elem) -> Option<(Elem, usize)> {
        let w = &self.words[g as usize];
        w.last().map(|&i| (self.parents[g as usize], i as usize))
    }

    pub fn word_length(&self, g: Elem) -> usize {
        self.words[g as usize].len()
    }

    /// Start indices of the breadth-first layers (layer `k` holds words of length `k`).
    pub fn layer_starts(&self) -> &[usize] {
        &self.layer_starts
    }

    /// Basis of the lattice used for coordinates.
    pub fn coordinate_basis(&self) -> &RationalMatrix {
        &self.basis
    }

    /// Integer matrix of `g` in the coordinate lattice.
    pub fn coordinate_matrix(&self, g: Elem) -> &IntegerMatrix {
        &self.coords[g as usize]
    }

    /// Matrix of `g` on the ambient space.
    pub fn matrix(&self, g: Elem) -> RationalMatrix {
        &(&self.basis * &self.coords[g as usize].to_rational()) * &self.basis_inv
    }

    /// Index of the element with the given ambient matrix.
    pub fn find(&self, m: &RationalMatrix) -> Option<Elem> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return None;
        }
        let c = (&(&self.basis_inv * m) * &self.basis).to_integer()?;
        self.lookup
            .get(&fingerprint(&c))
            .and_then(|b| b.iter().copied().find(|&i| self.coords[i as usize] == c))
    }

    /// Evaluates a generator word by matrix multiplication.
    pub fn evaluate_word(&self, word: &[usize]) -> RationalMatrix {
        word.iter()
            .fold(RationalMatrix::identity(self.dim), |acc, &i| &acc * &self.generators[i])
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order() as Elem
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    pub fn coxeter_diagram(&self) -> CoxeterDiagram {
        CoxeterDiagram::from_matrix(&self.coxeter)
    }

    /// Rank of `1 - g` on the ambient space.
    pub fn moved_rank(&self, g: Elem) -> usize {
        let c = self.coordinate_matrix(g);
        (&IntegerMatrix::identity(self.dim) - c).rank()
    }

    /// Involutions whose fixed space is a hyperplane.
    pub fn classify_reflections(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&g| self.is_involution(g) && self.moved_rank(g) == 1)
            .collect()
    }

    /// `{w s_i w^{-1}}`, sorted.
    pub fn conjugates_of_generators(&self) -> Vec<Elem> {
        let mut out: Vec<Elem> = self
            .elements()
            .flat_map(|w| {
                (0..self.num_generators())
                    .map(move |i| self.mul(self.mul(w, self.generator(i)), self.inverse(w)))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether the only vector fixed by every generator is zero.
    pub fn is_essential(&self) -> bool {
        let id = RationalMatrix::identity(self.dim);
        let stacked = self
            .generators
            .iter()
            .map(|s| &id - s)
            .reduce(|a, b| a.vstack(&b))
            .expect("at least one generator");
        stacked.nullspace().is_empty()
    }

    /// Element list in the matrix text format, one block per element.
    pub fn export_elements(&self) -> String {
        let mats: Vec<RationalMatrix> = self.elements().map(|g| self.matrix(g)).collect();
        crate::exactla::text::write_matrices(&mats)
    }
}

/// Labelled graph on the generators with an edge wherever `m(i, j) >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDiagram {
    pub nodes: Vec<String>,
    /// `(i, j, m)` with `i < j`; `m = 0` stands for an infinite label.
    pub edges: Vec<(usize, usize, u32)>,
}

impl CoxeterDiagram {
    pub fn from_matrix(m: &[Vec<u32>]) -> Self {
        let l = m.len();
        let nodes = (1..=l).map(|i| format!("s{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..l {
            for j in i + 1..l {
                if m[i][j] >= 3 || m[i][j] == 0 {
                    edges.push((i, j, m[i][j]));
                }
            }
        }
        CoxeterDiagram { nodes, edges }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Edge label between two nodes (2 when there is no edge).
    pub fn label(&self, i: usize, j: usize) -> u32 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges
            .iter()
            .find(|&&(x, y, _)| x == a && y == b)
            .map_or(if i == j { 1 } else { 2 }, |e| e.2)
    }

    pub fn is_connected(&self) -> bool {
        let l = self.len();
        if l == 0 {
            return true;
        }
        let mut seen = vec![false; l];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &(a, b, _) in &self.edges {
                let other = if a == i { b } else if b == i { a } else { continue };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All label-preserving permutations of the nodes, identity first.
    pub fn automorphisms(&self) -> Result<Vec<Vec<usize>>> {
        let l = self.len();
        if l > DIAGRAM_NODE_LIMIT {
            return Err(Error::DiagramTooLarge { nodes: l, limit: DIAGRAM_NODE_LIMIT });
        }
        let labels: Vec<Vec<u32>> = (0..l).map(|i| (0..l).map(|j| self.label(i, j)).collect()).collect();
        let mut out = Vec::new();
        let mut perm = Vec::with_capacity(l);
        let mut used = vec![false; l];
        fn extend(
            labels: &[Vec<u32>],
            perm: &mut Vec<usize>,
            used: &mut [bool],
            out: &mut Vec<Vec<usize>>,
        ) {
            let k = perm.len();
            if k == labels.len() {
                out.push(perm.clone());
                return;
            }
            for cand in 0..labels.len() {
                if used[cand] || (0..k).any(|j| labels[k][j] != labels[cand][perm[j]]) {
                    continue;
                }
                used[cand] = true;
                perm.push(cand);
                extend(labels, perm, used, out);
                perm.pop();
                used[cand] = false;
            }
        }
        extend(&labels, &mut perm, &mut used, &mut out);
        Ok(out)
    }

    /// Plain adjacency listing: one `i j m` line per edge after a node header.
    pub fn to_adjacency_text(&self) -> String {
        let mut s = format!("nodes {}\n", self.nodes.join(" "));
        for &(i, j, m) in &self.edges {
            writeln!(s, "{} {} {}", self.nodes[i], self.nodes[j], m).unwrap();
        }
        s
    }

    /// Graphviz description; labels of 3 are omitted as is customary.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph coxeter {\n");
        for n in &self.nodes {
            writeln!(s, "  {n};").unwrap();
        }
        for &(i, j, m) in &self.edges {
            let label = match m {
                3 => String::new(),
                0 => " [label=\"inf\"]".to_string(),
                m => format!(" [label=\"{m}\"]"),
            };
            writeln!(s, "  {} -- {}{};", self.nodes[i], self.nodes[j], label).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// Diagram automorphisms of a group's Coxeter diagram.
pub fn diagram_automorphisms(d: &CoxeterDiagram) -> Result<Vec<Vec<usize>>> {
    d.automorphisms()
}
