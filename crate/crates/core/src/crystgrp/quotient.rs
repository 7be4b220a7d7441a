//! The finite quotient `W / mT`.

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{CrystGroup, GroupElement};
use crate::error::{Error, Result};
use crate::weyl::Elem;

/// Default cap on `|W0| * m^rank`.
pub const DEFAULT_QUOTIENT_CEILING: u128 = 200_000;

/// Elements are encoded as `g * m^k + sum x_i m^i`, standing for the class of
/// `(t_g + x, g)` modulo `mL`. Translations are handled through numerators
/// over the vector-system denominator `D`, as residues modulo `D m`.
#[derive(Debug)]
pub struct FiniteQuotient<'a> {
    group: &'a CrystGroup,
    m: u64,
    k: usize,
    /// `m^k`.
    fiber: usize,
    order: usize,
    denom: u64,
    modulus: u64,
    /// Lattice actions of every point element, row-major.
    actions: Vec<Vec<i64>>,
    /// Vector-system numerators as residues.
    vsys: Vec<Vec<u64>>,
}

impl CrystGroup {
    /// `|W0| * m^rank`.
    pub fn quotient_order(&self, m: u64) -> u128 {
        (self.point_group().order() as u128).saturating_mul((m as u128).saturating_pow(self.rank() as u32))
    }

    pub fn finite_quotient(&self, m: u64) -> Result<FiniteQuotient<'_>> {
        self.finite_quotient_with_ceiling(m, DEFAULT_QUOTIENT_CEILING)
    }

    pub fn finite_quotient_with_ceiling(&self, m: u64, ceiling: u128) -> Result<FiniteQuotient<'_>> {
        if m == 0 {
            return Err(Error::DimensionMismatch("modulus must be positive".into()));
        }
        let order = self.quotient_order(m);
        if order > ceiling || order > u32::MAX as u128 {
            return Err(Error::QuotientTooLarge { order, ceiling });
        }
        let denom = self
            .denominator()
            .to_u64()
            .ok_or(Error::QuotientTooLarge { order, ceiling })?;
        let modulus = denom
            .checked_mul(m)
            .filter(|&x| x < (1 << 40))
            .ok_or(Error::QuotientTooLarge { order, ceiling })?;
        let w = self.point_group();
        let actions = w
            .elements()
            .map(|g| {
                self.action(g)
                    .entries()
                    .iter()
                    .map(|x| x.to_i64().expect("point-group actions have small entries"))
                    .collect()
            })
            .collect();
        let vsys = w
            .elements()
            .map(|g| {
                self.vsys_numerators(g)
                    .iter()
                    .map(|x| x.to_u64().expect("reduced numerators lie in [0, D)"))
                    .collect()
            })
            .collect();
        let k = self.rank();
        Ok(FiniteQuotient {
            group: self,
            m,
            k,
            fiber: (m as usize).pow(k as u32),
            order: order as usize,
            denom,
            modulus,
            actions,
            vsys,
        })
    }
}

impl<'a> FiniteQuotient<'a> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn group(&self) -> &'a CrystGroup {
        self.group
    }

    pub fn identity(&self) -> u32 {
        0
    }

    /// Point part and translation numerator residues of an element.
    fn decode(&self, e: u32) -> (Elem, Vec<u64>) {
        let e = e as usize;
        let g = (e / self.fiber) as Elem;
        let mut rest = (e % self.fiber) as u64;
        let base = &self.vsys[g as usize];
        let mut u = Vec::with_capacity(self.k);
        for &b in base {
            let x = rest % self.m;
            rest /= self.m;
            u.push((b + self.denom * x) % self.modulus);
        }
        (g, u)
    }

    fn encode(&self, g: Elem, u: &[u64]) -> u32 {
        let base = &self.vsys[g as usize];
        let mut id = 0u64;
        for (&x, &b) in u.iter().zip(base).rev() {
            let diff = (x + self.modulus - b) % self.modulus;
            debug_assert_eq!(diff % self.denom, 0);
            id = id * self.m + diff / self.denom;
        }
        (g as u64 * self.fiber as u64 + id) as u32
    }

    /// `u + A_g u'` modulo `D m`.
    fn act_add(&self, u: &[u64], g: Elem, u2: &[u64]) -> Vec<u64> {
        let a = &self.actions[g as usize];
        let md = self.modulus as i128;
        (0..self.k)
            .map(|r| {
                let mut s = u[r] as i128;
                for c in 0..self.k {
                    s += a[r * self.k + c] as i128 * u2[c] as i128;
                }
                s.rem_euclid(md) as u64
            })
            .collect()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (g, u) = self.decode(a);
        let (h, u2) = self.decode(b);
        let v = self.act_add(&u, g, &u2);
        self.encode(self.group.point_group().mul(g, h), &v)
    }

    pub fn inverse(&self, a: u32) -> u32 {
        let (g, u) = self.decode(a);
        let gi = self.group.point_group().inverse(g);
        let zero = vec![0; self.k];
        let moved = self.act_add(&zero, gi, &u);
        let neg: Vec<u64> = moved.iter().map(|&x| (self.modulus - x) % self.modulus).collect();
        self.encode(gi, &neg)
    }

    pub fn element_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// The class of a group element.
    pub fn class_of(&self, z: &GroupElement) -> Result<u32> {
        if z.group_id() != self.group.id() {
            return Err(Error::MixedParents);
        }
        let d = self.group.denominator();
        let u: Vec<u64> = z
            .coords
            .entries()
            .iter()
            .map(|c| {
                let n = (c * num_rational::BigRational::from_integer(d.clone())).to_integer();
                n.mod_floor(&self.modulus.into()).to_u64().expect("residue fits")
            })
            .collect();
        Ok(self.encode(z.g, &u))
    }

    /// Images of `(t_i, s_i)` and of the lattice basis translations.
    pub fn generators(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .group
            .generators()
            .iter()
            .map(|z| self.class_of(z).expect("own generator"))
            .collect();
        if self.m > 1 {
            for j in 0..self.k {
                let mut u = vec![0; self.k];
                u[j] = self.denom % self.modulus;
                out.push(self.encode(0, &u));
            }
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    /// Full Cayley table, row `a` holding `a * b`.
    pub fn table(&self) -> Vec<Vec<u32>> {
        self.elements().map(|a| self.elements().map(|b| self.mul(a, b)).collect()).collect()
    }
}
