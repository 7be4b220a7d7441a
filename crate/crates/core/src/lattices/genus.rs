//! Isomorphism invariants of the finite quotients `W / mT`.

use std::collections::BTreeMap;

use crate::crystgrp::{CrystGroup, FiniteQuotient};
use crate::error::{Error, Result};

/// Quotients up to this order may be compared by exhaustive isomorphism search.
pub const BACKTRACK_LIMIT: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenusFingerprint {
    pub m: u64,
    pub order: u64,
    /// Element order to number of elements of that order.
    pub order_histogram: BTreeMap<u32, u64>,
    pub center_order: u64,
    pub derived_order: u64,
    /// Prime-power orders of the cyclic factors of the abelianization, ascending.
    pub abelian_invariants: Vec<u64>,
}

impl GenusFingerprint {
    /// Equality of everything except the modulus.
    pub fn same_invariants(&self, other: &Self) -> bool {
        self.order == other.order
            && self.order_histogram == other.order_histogram
            && self.center_order == other.center_order
            && self.derived_order == other.derived_order
            && self.abelian_invariants == other.abelian_invariants
    }
}

struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn get(&self, i: u32) -> bool {
        self.0[i as usize / 64] >> (i % 64) & 1 == 1
    }
    fn set(&mut self, i: u32) -> bool {
        let was = self.get(i);
        self.0[i as usize / 64] |= 1 << (i % 64);
        !was
    }
}

/// Subgroup generated by `gens`, as a membership set and an element list.
fn subgroup(q: &FiniteQuotient<'_>, gens: &[u32]) -> (Bits, Vec<u32>) {
    let mut seen = Bits::new(q.order());
    seen.set(0);
    let mut list = vec![0u32];
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        for &g in gens {
            let b = q.mul(a, g);
            if seen.set(b) {
                list.push(b);
            }
        }
        i += 1;
    }
    (seen, list)
}

/// Normal closure of the commutators of the generators.
fn derived_subgroup(q: &FiniteQuotient<'_>, gens: &[u32]) -> (Bits, Vec<u32>) {
    let comm = |a: u32, b: u32| q.mul(q.mul(q.inverse(a), q.inverse(b)), q.mul(a, b));
    let mut hgens: Vec<u32> = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = comm(a, b);
            if c != 0 && !hgens.contains(&c) {
                hgens.push(c);
            }
        }
    }
    loop {
        let (set, list) = subgroup(q, &hgens);
        let mut added = false;
        for &h in hgens.clone().iter() {
            for &g in gens {
                let conj = q.mul(q.mul(q.inverse(g), h), g);
                if !set.get(conj) && !hgens.contains(&conj) {
                    hgens.push(conj);
                    added = true;
                }
            }
        }
        if !added {
            return (set, list);
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Cyclic prime-power factors of a finite abelian group given the orders of its elements.
fn abelian_invariants(orders: &[u64]) -> Vec<u64> {
    let size = orders.len() as u64;
    let mut out = Vec::new();
    for p in prime_factors(size) {
        // log_p #{a : a^(p^j) = 1} = sum_i min(j, e_i)
        let mut logs = vec![0u32];
        let mut j = 1;
        loop {
            let pj = p.pow(j);
            let count = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
            let mut l = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                l += 1;
            }
            logs.push(l);
            if count == size || logs[j as usize] == logs[j as usize - 1] {
                break;
            }
            j += 1;
        }
        // number of factors with exponent >= j is logs[j] - logs[j-1]
        let at_least: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        for (j, &n) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            for _ in 0..(n - next) {
                out.push(p.pow(j as u32 + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

impl GenusFingerprint {
    pub fn of_quotient(q: &FiniteQuotient<'_>) -> Self {
        let gens = q.generators();
        let mut order_histogram = BTreeMap::new();
        for a in q.elements() {
            *order_histogram.entry(q.element_order(a)).or_insert(0) += 1;
        }
        let center_order = q
            .elements()
            .filter(|&a| gens.iter().all(|&g| q.mul(a, g) == q.mul(g, a)))
            .count() as u64;
        let (dset, dlist) = derived_subgroup(q, &gens);

        // orders of the cosets of the derived subgroup
        let mut labelled = Bits::new(q.order());
        let mut coset_orders = Vec::new();
        for a in q.elements() {
            if labelled.get(a) {
                continue;
            }
            for &h in &dlist {
                labelled.set(q.mul(a, h));
            }
            let mut x = a;
            let mut n = 1u64;
            while !dset.get(x) {
                x = q.mul(x, a);
                n += 1;
            }
            coset_orders.push(n);
        }
        GenusFingerprint {
            m: q.modulus(),
            order: q.order() as u64,
            order_histogram,
            center_order,
            derived_order: dlist.len() as u64,
            abelian_invariants: abelian_invariants(&coset_orders),
        }
    }
}

/// Fingerprint of `W / mT`.
pub fn genus_fingerprint(w: &CrystGroup, m: u64) -> Result<GenusFingerprint> {
    Ok(GenusFingerprint::of_quotient(&w.finite_quotient(m)?))
}

/// The least `m <= max_m` whose quotients have different fingerprints.
///
/// Scanning stops early once a quotient would exceed the size ceiling; `None`
/// means no separation was seen among the moduli that were examined.
pub fn least_separating_modulus(a: &CrystGroup, b: &CrystGroup, max_m: u64) -> Result<Option<u64>> {
    for m in 1..=max_m {
        let (fa, fb) = match (genus_fingerprint(a, m), genus_fingerprint(b, m)) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(Error::QuotientTooLarge { .. }), _) | (_, Err(Error::QuotientTooLarge { .. })) if m > 1 => {
                return Ok(None)
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        if !fa.same_invariants(&fb) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Greedy small generating set, trying elements of large order first.
fn small_generating_set(q: &FiniteQuotient<'_>) -> Vec<u32> {
    let mut by_order: Vec<(u32, u32)> = q.elements().map(|a| (q.element_order(a), a)).collect();
    by_order.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut gens = Vec::new();
    let (mut set, mut size) = (Bits::new(q.order()), 1);
    set.set(0);
    for (_, a) in by_order {
        if size == q.order() {
            break;
        }
        if !set.get(a) {
            gens.push(a);
            let (s, l) = subgroup(q, &gens);
            set = s;
            size = l.len();
        }
    }
    gens
}

/// Extends `images` of `gens` to a homomorphism on the subgroup they generate,
/// returning the element map if it is consistent.
fn extend_hom(a: &FiniteQuotient<'_>, b: &FiniteQuotient<'_>, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    const UNSET: u32 = u32::MAX;
    let mut phi = vec![UNSET; a.order()];
    phi[0] = 0;
    let mut queue = vec![0u32];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let img = b.mul(phi[x as usize], h);
            match phi[y as usize] {
                UNSET => {
                    phi[y as usize] = img;
                    queue.push(y);
                }
                old if old != img => return None,
                _ => {}
            }
        }
        i += 1;
    }
    Some(phi)
}

/// Exhaustive isomorphism test for quotients of order at most
/// [`BACKTRACK_LIMIT`]; `None` above that.
pub fn quotients_isomorphic(a: &FiniteQuotient<'_>, b: &FiniteQuotient<'_>) -> Option<bool> {
    if a.order() > BACKTRACK_LIMIT || b.order() > BACKTRACK_LIMIT {
        return None;
    }
    if !GenusFingerprint::of_quotient(a).same_invariants(&GenusFingerprint::of_quotient(b)) {
        return Some(false);
    }
    let gens = small_generating_set(a);
    let border: Vec<u32> = b.elements().map(|x| b.element_order(x)).collect();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g);
            b.elements().filter(|&x| border[x as usize] == o).collect()
        })
        .collect();

    fn search(
        a: &FiniteQuotient<'_>,
        b: &FiniteQuotient<'_>,
        gens: &[u32],
        candidates: &[Vec<u32>],
        images: &mut Vec<u32>,
    ) -> bool {
        let depth = images.len();
        if depth > 0 {
            let Some(phi) = extend_hom(a, b, &gens[..depth], images) else {
                return false;
            };
            if depth == gens.len() {
                let mut hit = Bits::new(b.order());
                return phi.iter().all(|&y| hit.set(y));
            }
        }
        for &c in &candidates[depth] {
            images.push(c);
            if search(a, b, gens, candidates, images) {
                return true;
            }
            images.pop();
        }
        false
    }
    Some(search(a, b, &gens, &candidates, &mut Vec::new()))
}
