//! Per-family verification tables.

use std::fmt::Write as _;

use serde::Serialize;

use super::{chi_profile, first_difference, CaseFamily, ChiProfile, Verdict};
use crate::crystgrp::CrystGroup;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct RepRow {
    pub rep: usize,
    pub split: bool,
    /// `v` with `(v - g v + t_g, g)` in the section, when split.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split_witness: Option<String>,
    pub verdicts: Vec<Verdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRow {
    pub left: usize,
    pub right: usize,
    pub separated_by: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub case: String,
    pub classes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published: Option<usize>,
    /// How the quantifier over realizing tuples was evaluated.
    pub reduction: String,
    pub rows: Vec<RepRow>,
    pub pairs: Vec<PairRow>,
    /// Listed generator systems that do not define groups.
    pub rejected: Vec<String>,
}

impl FamilyReport {
    pub fn all_separated(&self) -> bool {
        self.pairs.iter().all(|p| p.separated_by.is_some())
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "family {}  ({}, {} classes", self.family, self.case, self.classes);
        if let Some(p) = self.published {
            let _ = write!(s, ", {p} listed");
        }
        let _ = writeln!(s, ")");
        let _ = writeln!(s, "quantifier: {}", self.reduction);
        let preds: Vec<&str> = self
            .rows
            .first()
            .map(|r| r.verdicts.iter().map(|v| v.predicate.as_str()).collect())
            .unwrap_or_default();
        let _ = write!(s, "{:<5}{:<7}", "rep", "split");
        for p in &preds {
            let _ = write!(s, "{p:<w$}", w = p.len() + 2);
        }
        let _ = writeln!(s);
        let yn = |b: bool| if b { "yes" } else { "no" };
        for r in &self.rows {
            let _ = write!(s, "{:<5}{:<7}", format!("W{}", r.rep), yn(r.split));
            for (v, p) in r.verdicts.iter().zip(&preds) {
                let _ = write!(s, "{:<w$}", yn(v.holds), w = p.len() + 2);
            }
            let _ = writeln!(s);
        }
        let witnesses: Vec<String> = self
            .rows
            .iter()
            .flat_map(|r| {
                let split = r.split_witness.iter().map(move |w| format!("  W{} split: {w}", r.rep));
                let rest = r
                    .verdicts
                    .iter()
                    .filter_map(move |v| v.witness.as_ref().map(|w| format!("  W{} {}: {w}", r.rep, v.predicate)));
                split.chain(rest)
            })
            .collect();
        if !witnesses.is_empty() {
            let _ = writeln!(s, "witnesses:");
            for w in witnesses {
                let _ = writeln!(s, "{w}");
            }
        }
        if !self.pairs.is_empty() {
            let _ = writeln!(s, "pairs:");
            for p in &self.pairs {
                let by = p.separated_by.as_deref().unwrap_or("NOT SEPARATED");
                let _ = writeln!(s, "  W{} / W{}: {by}", p.left, p.right);
            }
        }
        for r in &self.rejected {
            let _ = writeln!(s, "rejected: {r}");
        }
        s
    }
}

fn row(w: &CrystGroup, fam: &CaseFamily) -> Result<(RepRow, ChiProfile)> {
    let split_witness = w.split_witness();
    let profile = chi_profile(w, fam.case)?;
    let row = RepRow {
        rep: w.rep_index().unwrap_or_default(),
        split: split_witness.is_some(),
        split_witness: split_witness.map(|s| s.v.to_string()),
        verdicts: profile.verdicts.clone(),
    };
    Ok((row, profile))
}

/// Builds the family, decides every invariant per representative and
/// separates every pair.
pub fn verify_family(fam: &CaseFamily) -> Result<FamilyReport> {
    let groups = fam.build()?;
    let rows: Vec<(RepRow, ChiProfile)> = std::thread::scope(|sc| {
        let handles: Vec<_> = groups.iter().map(|w| sc.spawn(move || row(w, fam))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(Error::Catalog("worker panicked".into()))))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut pairs = Vec::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (a, pa) = &rows[i];
            let (b, pb) = &rows[j];
            pairs.push(PairRow {
                left: a.rep,
                right: b.rep,
                separated_by: first_difference((a.split, pa), (b.split, pb)),
            });
        }
    }
    let mut rejected = Vec::new();
    for r in fam.reps.iter().filter(|r| r.invalid) {
        match fam.build_rep(r.index) {
            Err(e) => rejected.push(format!("W{}: {e}", r.index)),
            Ok(_) => return Err(Error::Catalog(format!("{} W{} is flagged invalid but builds", fam.key, r.index))),
        }
    }
    let realizers = rows.first().map_or(1, |r| r.1.realizers);
    Ok(FamilyReport {
        family: fam.key.to_string(),
        case: fam.case.to_string(),
        classes: fam.n,
        published: fam.published,
        reduction: format!("all {realizers} diagram-twisted canonical tuple(s); other realizers differ by inner automorphisms"),
        rows: rows.into_iter().map(|r| r.0).collect(),
        pairs,
        rejected,
    })
}
