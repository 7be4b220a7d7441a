//! Distinguishing the groups of one family by coset predicates.
//!
//! Each predicate asks for elements in prescribed cosets `x_i T` of a
//! generating tuple, so it is decided by the crystgrp solvers. The universal
//! quantifier over all realizing tuples is evaluated on the canonical tuple
//! twisted by diagram automorphisms only: any other realizer differs from one
//! of these by an inner automorphism, which preserves every coset predicate.

mod catalog;
mod report;

use serde::Serialize;

use crate::crystgrp::{CrystGroup, GroupElement};
use crate::error::{Error, Result};
use crate::weyl::Elem;

pub use catalog::{catalog, weyl_group, CaseFamily, CaseLabel, Catalog, CatalogRep};
pub use report::{verify_family, FamilyReport, PairRow, RepRow};

/// A generating tuple `(x_1, ..., x_l)` with the diagram permutation it came from.
#[derive(Clone, Debug)]
pub struct Realizer {
    pub permutation: Vec<usize>,
    pub tuple: Vec<GroupElement>,
}

/// `(u_{σ(1)}, ..., u_{σ(l)})` for every diagram automorphism `σ`, identity first.
pub fn reduced_eta_realizers(w: &CrystGroup) -> Vec<Realizer> {
    let u = w.generators();
    let perms = w
        .point_group()
        .coxeter_diagram()
        .automorphisms()
        .unwrap_or_else(|_| vec![(0..u.len()).collect()]);
    perms
        .into_iter()
        .map(|p| Realizer { tuple: p.iter().map(|&i| u[i].clone()).collect(), permutation: p })
        .inspect(|r| debug_assert!(eta_check(w, &r.tuple)))
        .collect()
}

/// Whether `s_i ↦ x_i T` is an isomorphism `W0 → W/T` carrying the
/// reflections onto exactly the involutions with reflection-like profile.
pub fn eta_check(w: &CrystGroup, tuple: &[GroupElement]) -> bool {
    let pg = w.point_group();
    if tuple.len() != pg.num_generators() || tuple.iter().any(|z| z.group_id() != w.id()) {
        return false;
    }
    let p: Vec<Elem> = tuple.iter().map(|z| z.g).collect();
    let cm = pg.coxeter_matrix();
    for i in 0..p.len() {
        if p[i] == pg.identity() || !pg.is_involution(p[i]) {
            return false;
        }
        for j in i + 1..p.len() {
            if pg.element_order(pg.mul(p[i], p[j])) != cm[i][j] {
                return false;
            }
        }
    }
    // the relations hold, so the map is onto W0 iff it is injective
    let mut seen = vec![false; pg.order()];
    let mut stack = vec![pg.identity()];
    seen[pg.identity() as usize] = true;
    let mut count = 1;
    while let Some(g) = stack.pop() {
        for &s in &p {
            let h = pg.mul(g, s);
            if !seen[h as usize] {
                seen[h as usize] = true;
                count += 1;
                stack.push(h);
            }
        }
    }
    if count != pg.order() {
        return false;
    }
    let mut conj: Vec<Elem> = pg
        .elements()
        .flat_map(|x| p.iter().map(move |&s| pg.mul(pg.mul(x, s), pg.inverse(x))))
        .collect();
    conj.sort_unstable();
    conj.dedup();
    let mut refl = w.reflection_like_involutions().to_vec();
    refl.sort_unstable();
    conj == refl
}

/// One decided predicate, with a witness when it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub predicate: String,
    pub holds: bool,
    /// Witness elements and the relevant squares, on the canonical tuple.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiProfile {
    pub case: CaseLabel,
    /// Number of tuples the predicates were conjoined over.
    pub realizers: usize,
    pub verdicts: Vec<Verdict>,
}

impl ChiProfile {
    /// Predicate names with their truth values, witnesses dropped.
    pub fn flags(&self) -> Vec<(String, bool)> {
        self.verdicts.iter().map(|v| (v.predicate.clone(), v.holds)).collect()
    }

    pub fn get(&self, predicate: &str) -> Option<bool> {
        self.verdicts.iter().find(|v| v.predicate == predicate).map(|v| v.holds)
    }
}

enum Predicate {
    Involution(usize),
    EqualSquares(Vec<usize>),
    CommutingInvolution(usize, usize),
}

impl Predicate {
    fn name(&self) -> String {
        let s = |i: &usize| format!("s_{}", i + 1);
        match self {
            Predicate::Involution(i) => format!("involution({})", s(i)),
            Predicate::EqualSquares(v) if v.len() == 3 => {
                format!("triple-squares({})", v.iter().map(s).collect::<Vec<_>>().join(","))
            }
            Predicate::EqualSquares(v) => format!("equal-squares({})", v.iter().map(s).collect::<Vec<_>>().join(",")),
            Predicate::CommutingInvolution(i, j) => format!("commuting-involution({},{})", s(i), s(j)),
        }
    }

    /// `None` when false, otherwise a witness description.
    fn eval(&self, w: &CrystGroup, tuple: &[GroupElement]) -> Result<Option<String>> {
        Ok(match self {
            Predicate::Involution(i) => w.involution_in_coset(&tuple[*i])?.map(|z| format!("z = {}", w.describe(&z))),
            Predicate::EqualSquares(v) => {
                let reps: Vec<GroupElement> = v.iter().map(|&i| tuple[i].clone()).collect();
                match w.equal_squares_in_cosets(&reps)? {
                    None => None,
                    Some(zs) => {
                        let sq = w.square(&zs[0])?;
                        let names: Vec<String> = zs.iter().map(|z| w.describe(z)).collect();
                        Some(format!("z = {}; square = {}", names.join(", "), w.describe(&sq)))
                    }
                }
            }
            Predicate::CommutingInvolution(i, j) => w
                .commuting_in_cosets(&tuple[*i], &tuple[*j])?
                .map(|c| format!("z = {}, involution = {}", w.describe(&c.z_g), w.describe(&c.z_h))),
        })
    }
}

fn battery(case: CaseLabel, l: usize) -> Result<Vec<Predicate>> {
    let need = match case {
        CaseLabel::Trivial | CaseLabel::Split => return Ok(Vec::new()),
        CaseLabel::Case3 | CaseLabel::Case41 => 2,
        CaseLabel::Case43 => 3,
        CaseLabel::Case42 => 4,
    };
    if l < need {
        return Err(Error::FamilyMismatch);
    }
    let mut out: Vec<Predicate> = (0..l).map(Predicate::Involution).collect();
    match case {
        CaseLabel::Case3 => out.push(Predicate::EqualSquares(vec![l - 2, l - 1])),
        CaseLabel::Case42 => {
            out.push(Predicate::EqualSquares(vec![0, 1, 2]));
            out.push(Predicate::CommutingInvolution(0, 3));
        }
        CaseLabel::Case43 => out.push(Predicate::EqualSquares(vec![1, l - 1])),
        _ => {}
    }
    Ok(out)
}

/// The case battery on the reduced realizers, conjoined over tuples.
pub fn chi_profile(w: &CrystGroup, case: CaseLabel) -> Result<ChiProfile> {
    let tuples: Vec<Vec<GroupElement>> = reduced_eta_realizers(w).into_iter().map(|r| r.tuple).collect();
    chi_profile_for_tuples(w, case, &tuples)
}

/// As `chi_profile` but over caller-supplied tuples. Witnesses come from the first.
pub fn chi_profile_for_tuples(w: &CrystGroup, case: CaseLabel, tuples: &[Vec<GroupElement>]) -> Result<ChiProfile> {
    let l = w.point_group().num_generators();
    if tuples.iter().any(|t| t.len() != l) {
        return Err(Error::DimensionMismatch(format!("tuples must have {l} entries")));
    }
    let mut verdicts = Vec::new();
    for p in battery(case, l)? {
        let mut holds = true;
        let mut witness = None;
        for (k, t) in tuples.iter().enumerate() {
            match p.eval(w, t)? {
                None => {
                    holds = false;
                    witness = None;
                    break;
                }
                Some(desc) if k == 0 => witness = Some(desc),
                Some(_) => {}
            }
        }
        verdicts.push(Verdict { predicate: p.name(), holds, witness });
    }
    Ok(ChiProfile { case, realizers: tuples.len(), verdicts })
}

/// The case label recorded for the group's family.
pub fn case_of(w: &CrystGroup) -> Result<CaseLabel> {
    let key = w.family().ok_or(Error::FamilyMismatch)?;
    Ok(Catalog::shipped()?.family(key)?.case)
}

/// Name of the first invariant on which `split` and `profile` data differ.
fn first_difference(a: (bool, &ChiProfile), b: (bool, &ChiProfile)) -> Option<String> {
    if a.0 != b.0 {
        return Some("split".into());
    }
    a.1.verdicts
        .iter()
        .zip(&b.1.verdicts)
        .find(|(x, y)| x.holds != y.holds)
        .map(|(x, _)| x.predicate.clone())
}

/// Runs the split test and then the family's battery; `None` means no
/// invariant tells the groups apart.
pub fn distinguish(a: &CrystGroup, b: &CrystGroup) -> Result<Option<String>> {
    if a.family().is_none() || a.family() != b.family() {
        return Err(Error::FamilyMismatch);
    }
    let (sa, sb) = (a.is_split(), b.is_split());
    if sa != sb {
        return Ok(Some("split".into()));
    }
    let case = case_of(a)?;
    let (pa, pb) = (chi_profile(a, case)?, chi_profile(b, case)?);
    Ok(first_difference((sa, &pa), (sb, &pb)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystgrp::FamilyKey;

    fn fam(s: &str) -> Vec<CrystGroup> {
        Catalog::shipped().unwrap().family(FamilyKey::parse(s).unwrap()).unwrap().build().unwrap()
    }

    #[test]
    fn realizer_counts() {
        let b3 = fam("B3-CL");
        assert_eq!(reduced_eta_realizers(&b3[1]).len(), 1);
        let d6 = fam("D6-FL");
        let r = reduced_eta_realizers(&d6[2]);
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].permutation, vec![0, 1, 2, 3, 5, 4]);
        assert!(r.iter().all(|x| eta_check(&d6[2], &x.tuple)));
    }

    #[test]
    fn eta_rejects_repeated_entries() {
        let b3 = fam("B3-CL");
        let mut t = b3[0].generators();
        t[1] = t[0].clone();
        assert!(!eta_check(&b3[0], &t));
        assert!(eta_check(&b3[0], &b3[0].generators()));
    }

    #[test]
    fn case_41_profile() {
        let b3 = fam("B3-CL");
        let p = chi_profile(&b3[1], CaseLabel::Case41).unwrap();
        assert_eq!(p.get("involution(s_1)"), Some(true));
        assert_eq!(p.get("involution(s_2)"), Some(true));
        assert_eq!(p.get("involution(s_3)"), Some(false));
        assert_eq!(distinguish(&b3[0], &b3[1]).unwrap().as_deref(), Some("split"));
        assert_eq!(distinguish(&b3[2], &b3[2]).unwrap(), None);
    }

    #[test]
    fn family_mismatch() {
        let b3 = fam("B3-CL");
        let b4 = fam("B4-CL");
        assert_eq!(distinguish(&b3[0], &b4[0]), Err(Error::FamilyMismatch));
    }
}
