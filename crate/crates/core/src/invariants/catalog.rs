//! The shipped catalog of representatives.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::crystgrp::{CrystGroup, FamilyKey};
use crate::error::{Error, Result};
use crate::exactla::RationalVector;
use crate::lattices::InvariantLattice;
use crate::rootsys::{family_lattice, LatticeFamily, RootSystem, RootType};
use crate::weyl::WeylGroup;

const CATALOG_TEXT: &str = include_str!("../../data/catalog.txt");
const CATALOG_SHA256: &str = include_str!("../../data/catalog.sha256");

/// Which distinguishing battery a family needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseLabel {
    /// One class; nothing to distinguish.
    Trivial,
    /// Two classes, told apart by the split test.
    Split,
    Case3,
    Case41,
    Case42,
    Case43,
}

impl CaseLabel {
    pub fn code(self) -> &'static str {
        match self {
            CaseLabel::Trivial => "trivial",
            CaseLabel::Split => "split",
            CaseLabel::Case3 => "3",
            CaseLabel::Case41 => "4.1",
            CaseLabel::Case42 => "4.2",
            CaseLabel::Case43 => "4.3",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::Trivial | CaseLabel::Split => f.write_str(self.code()),
            _ => write!(f, "case {}", self.code()),
        }
    }
}

impl FromStr for CaseLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "trivial" => CaseLabel::Trivial,
            "split" => CaseLabel::Split,
            "3" => CaseLabel::Case3,
            "4.1" => CaseLabel::Case41,
            "4.2" => CaseLabel::Case42,
            "4.3" => CaseLabel::Case43,
            _ => return Err(Error::Catalog(format!("unknown case label {s:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct CatalogRep {
    /// 1-based; `W1` is always the split group.
    pub index: usize,
    /// Kept for reporting only: the list does not define an extension.
    pub invalid: bool,
    pub translations: Vec<RationalVector>,
}

/// One (root system, lattice) row with its representatives.
#[derive(Debug)]
pub struct CaseFamily {
    pub key: FamilyKey,
    /// Number of isomorphism classes.
    pub n: usize,
    /// Count given in the literature when it differs from `n`.
    pub published: Option<usize>,
    pub case: CaseLabel,
    pub reps: Vec<CatalogRep>,
    lattice: OnceLock<Arc<InvariantLattice>>,
}

impl CaseFamily {
    /// Representatives that define groups.
    pub fn representatives(&self) -> impl Iterator<Item = &CatalogRep> {
        self.reps.iter().filter(|r| !r.invalid)
    }

    pub fn rep(&self, index: usize) -> Result<&CatalogRep> {
        self.reps
            .iter()
            .find(|r| r.index == index)
            .ok_or_else(|| Error::UnknownCatalogEntry(format!("{} W{index}", self.key)))
    }

    pub fn lattice(&self) -> Result<Arc<InvariantLattice>> {
        if let Some(l) = self.lattice.get() {
            return Ok(l.clone());
        }
        let w = weyl_group(self.key.root_type, self.key.rank)?;
        let l = Arc::new(InvariantLattice::new(family_lattice(self.key.lattice, self.key.rank)?, w)?);
        Ok(self.lattice.get_or_init(|| l).clone())
    }

    /// Builds one representative. Invalid entries fail with the builder's error.
    pub fn build_rep(&self, index: usize) -> Result<CrystGroup> {
        let rep = self.rep(index)?;
        Ok(CrystGroup::build_from_generators(self.lattice()?, &rep.translations)?.with_label(self.key, index))
    }

    /// Builds every valid representative, in index order.
    pub fn build(&self) -> Result<Vec<CrystGroup>> {
        let out = self
            .representatives()
            .map(|r| self.build_rep(r.index))
            .collect::<Result<Vec<_>>>()?;
        if out.len() != self.n {
            return Err(Error::Catalog(format!("{} lists {} groups, expected {}", self.key, out.len(), self.n)));
        }
        Ok(out)
    }
}

#[derive(Debug)]
pub struct Catalog {
    families: Vec<CaseFamily>,
}

fn parse_vector(s: &str, dim: usize, line: usize) -> Result<RationalVector> {
    let entries = s
        .split_whitespace()
        .map(|x| BigRational::from_str(x).map_err(|_| Error::Catalog(format!("line {line}: bad rational {x:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != dim {
        return Err(Error::Catalog(format!("line {line}: expected {dim} coordinates, got {}", entries.len())));
    }
    Ok(RationalVector::new(entries))
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self> {
        let mut families: Vec<CaseFamily> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let no = no + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("family ") {
                let mut parts = rest.split_whitespace();
                let key = FamilyKey::parse(parts.next().unwrap_or_default())?;
                let (mut n, mut case, mut published) = (None, None, None);
                for p in parts {
                    let (k, v) = p
                        .split_once('=')
                        .ok_or_else(|| Error::Catalog(format!("line {no}: expected key=value, got {p:?}")))?;
                    let count = || v.parse::<usize>().map_err(|_| Error::Catalog(format!("line {no}: bad count {v:?}")));
                    match k {
                        "n" => n = Some(count()?),
                        "published" => published = Some(count()?),
                        "case" => case = Some(v.parse()?),
                        _ => return Err(Error::Catalog(format!("line {no}: unknown field {k:?}"))),
                    }
                }
                families.push(CaseFamily {
                    key,
                    n: n.ok_or_else(|| Error::Catalog(format!("line {no}: missing n")))?,
                    published,
                    case: case.ok_or_else(|| Error::Catalog(format!("line {no}: missing case")))?,
                    reps: Vec::new(),
                    lattice: OnceLock::new(),
                });
            } else if let Some(rest) = line.strip_prefix("rep ") {
                let fam = families
                    .last_mut()
                    .ok_or_else(|| Error::Catalog(format!("line {no}: rep before any family")))?;
                let (head, body) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Catalog(format!("line {no}: missing ':'")))?;
                let mut head = head.split_whitespace();
                let index = head
                    .next()
                    .and_then(|x| x.parse::<usize>().ok())
                    .ok_or_else(|| Error::Catalog(format!("line {no}: bad rep index")))?;
                let invalid = match head.next() {
                    None => false,
                    Some("invalid") => true,
                    Some(x) => return Err(Error::Catalog(format!("line {no}: unknown flag {x:?}"))),
                };
                let dim = RootSystem::build(fam.key.root_type, fam.key.rank)?.ambient_dim();
                let translations = body
                    .split('|')
                    .map(|v| parse_vector(v, dim, no))
                    .collect::<Result<Vec<_>>>()?;
                if translations.len() != fam.key.rank {
                    return Err(Error::Catalog(format!(
                        "line {no}: {} needs {} translations, got {}",
                        fam.key,
                        fam.key.rank,
                        translations.len()
                    )));
                }
                fam.reps.push(CatalogRep { index, invalid, translations });
            } else {
                return Err(Error::Catalog(format!("line {no}: unrecognised record")));
            }
        }
        let cat = Catalog { families };
        cat.validate()?;
        Ok(cat)
    }

    /// The catalog compiled into the library, checked against its digest.
    pub fn shipped() -> Result<&'static Catalog> {
        static SHIPPED: OnceLock<std::result::Result<Catalog, Error>> = OnceLock::new();
        SHIPPED
            .get_or_init(|| {
                let digest = hex::encode(Sha256::digest(CATALOG_TEXT.as_bytes()));
                let expected = CATALOG_SHA256.split_whitespace().next().unwrap_or_default();
                if digest != expected {
                    return Err(Error::Catalog(format!("checksum mismatch: {digest} != {expected}")));
                }
                Catalog::parse(CATALOG_TEXT)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Structural checks: counts agree with `n`, case labels agree with counts,
    /// indices are `1..` without gaps and `W1` carries the zero system.
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for f in &self.families {
            if !seen.insert(f.key) {
                return Err(Error::Catalog(format!("{} listed twice", f.key)));
            }
            let valid = f.representatives().count();
            if valid != f.n {
                return Err(Error::Catalog(format!("{}: {valid} representatives for n = {}", f.key, f.n)));
            }
            let case_ok = match f.case {
                CaseLabel::Trivial => f.n == 1,
                CaseLabel::Split => f.n == 2,
                _ => f.n >= 3 || f.published.is_some_and(|p| p >= 3),
            };
            if !case_ok {
                return Err(Error::Catalog(format!("{}: case {} does not fit n = {}", f.key, f.case, f.n)));
            }
            if f.reps.iter().enumerate().any(|(i, r)| r.index != i + 1) {
                return Err(Error::Catalog(format!("{}: representative indices must run 1, 2, ...", f.key)));
            }
            if f.reps.first().is_none_or(|r| r.invalid || r.translations.iter().any(|t| !t.is_zero())) {
                return Err(Error::Catalog(format!("{}: W1 must be the split group", f.key)));
            }
        }
        Ok(())
    }

    /// Builds every representative: valid lists must build, invalid ones must be rejected.
    pub fn validate_groups(&self) -> Result<()> {
        for f in &self.families {
            f.build()?;
            for r in f.reps.iter().filter(|r| r.invalid) {
                match f.build_rep(r.index) {
                    Err(Error::InconsistentVectorSystem(_)) => {}
                    Ok(_) => {
                        return Err(Error::Catalog(format!("{} W{} is flagged invalid but builds", f.key, r.index)))
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(())
    }

    pub fn families(&self) -> &[CaseFamily] {
        &self.families
    }

    pub fn family(&self, key: FamilyKey) -> Result<&CaseFamily> {
        self.families
            .iter()
            .find(|f| f.key == key)
            .ok_or_else(|| Error::UnknownCatalogEntry(key.to_string()))
    }
}

/// Weyl groups are shared between families of the same root system.
pub fn weyl_group(t: RootType, rank: usize) -> Result<Arc<WeylGroup>> {
    static CACHE: OnceLock<Mutex<HashMap<(RootType, usize), Arc<WeylGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(w) = cache.lock().expect("weyl cache").get(&(t, rank)) {
        return Ok(w.clone());
    }
    let w = Arc::new(WeylGroup::of_root_system(&RootSystem::build(t, rank)?)?);
    Ok(cache.lock().expect("weyl cache").entry((t, rank)).or_insert(w).clone())
}

/// The catalogued representatives of a family.
pub fn catalog(root_type: RootType, rank: usize, lattice: LatticeFamily) -> Result<Vec<CrystGroup>> {
    Catalog::shipped()?.family(FamilyKey::new(root_type, rank, lattice))?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_loads() {
        let c = Catalog::shipped().unwrap();
        assert!(c.families().len() >= 30);
        let d6 = c.family(FamilyKey::parse("D6-FL").unwrap()).unwrap();
        assert_eq!((d6.n, d6.case), (3, CaseLabel::Case3));
    }

    #[test]
    fn unknown_entry() {
        assert!(matches!(
            catalog(RootType::B, 7, LatticeFamily::CL),
            Err(Error::UnknownCatalogEntry(_))
        ));
    }

    #[test]
    fn parse_errors() {
        assert!(Catalog::parse("rep 1 : 0").is_err());
        assert!(Catalog::parse("family B3-CL n=1 case=trivial\nrep 1 : 0 0 0 | 0 0 0").is_err());
        assert!(Catalog::parse("family B3-CL n=2 case=trivial\nrep 1 : 0 0 0 | 0 0 0 | 0 0 0").is_err());
        assert!(Catalog::parse("family B3-CL n=1 case=trivial\nrep 1 : 0 0 0 | 0 0 0 | 0 0 1/2").is_err());
        assert!(Catalog::parse("family B3-CL n=1 case=trivial\nrep 1 : 0 0 0 | 0 0 0 | 0 0 0").is_ok());
    }
}
