//! Structured export and import.
//!
//! Documents are JSON objects carrying `schema_version` and a `kind` tag.
//! Rationals are written as `"p/q"` strings so that values round-trip exactly.

use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::crystgrp::{CrystGroup, FamilyKey};
use crate::error::{Error, Result};
use crate::exactla::text::{format_rational, parse_rational};
use crate::exactla::{RationalMatrix, RationalVector};
use crate::lattices::InvariantLattice;
use crate::rootsys::{LatticeFamily, LatticeSpec, RootSystem, RootType};
use crate::invariants::weyl_group;
use crate::weyl::CoxeterDiagram;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// JSON documents; the only importable format.
    Json,
    /// Human-readable rendering.
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" | "structured" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::UnsupportedFormat(s.into())),
        }
    }
}

pub fn vector_to_strings(v: &RationalVector) -> Vec<String> {
    v.entries().iter().map(format_rational).collect()
}

pub fn vector_from_strings(v: &[String]) -> Result<RationalVector> {
    v.iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>>>()
        .map(RationalVector::new)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRecord {
    pub coords: Vec<String>,
    /// Coefficients in the simple roots.
    pub simple: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemRecord {
    pub label: String,
    pub ambient_dim: usize,
    pub simple_roots: Vec<Vec<String>>,
    pub roots: Vec<RootRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub i: usize,
    pub j: usize,
    pub label: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRecord {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rep: Option<usize>,
    pub root_system: String,
    pub lattice_family: String,
    /// Lattice basis vectors.
    pub lattice_basis: Vec<Vec<String>>,
    /// Translation parts paired with the simple reflections.
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Entity {
    RootSystem(RootSystemRecord),
    CoxeterDiagram(DiagramRecord),
    CrystallographicGroup(GroupRecord),
}

#[derive(Serialize, Deserialize)]
struct Document {
    schema_version: u32,
    #[serde(flatten)]
    entity: Entity,
}

impl Entity {
    pub fn root_system(r: &RootSystem) -> Self {
        let roots = r
            .roots()
            .iter()
            .map(|a| RootRecord {
                coords: vector_to_strings(a),
                simple: vector_to_strings(&r.simple_coordinates(a).expect("roots lie in the span")),
            })
            .collect();
        Entity::RootSystem(RootSystemRecord {
            label: r.label(),
            ambient_dim: r.ambient_dim(),
            simple_roots: r.simple_roots().iter().map(vector_to_strings).collect(),
            roots,
        })
    }

    pub fn diagram(d: &CoxeterDiagram, label: Option<String>) -> Self {
        Entity::CoxeterDiagram(DiagramRecord {
            label,
            nodes: d.nodes.clone(),
            edges: d.edges.iter().map(|&(i, j, label)| EdgeRecord { i, j, label }).collect(),
        })
    }

    pub fn group(w: &CrystGroup) -> Result<Self> {
        let pg = w.point_group();
        let label = match w.family() {
            Some(f) => RootSystem::build(f.root_type, f.rank)?.label(),
            None => {
                return Err(Error::UnsupportedFormat(
                    "only groups over a named root system can be exported".into(),
                ))
            }
        };
        let spec = w.lattice().spec();
        debug_assert_eq!(pg.num_generators(), w.generator_translations().len());
        Ok(Entity::CrystallographicGroup(GroupRecord {
            family: w.family().map(|f| f.to_string()),
            rep: w.rep_index(),
            root_system: label,
            lattice_family: spec.family.name(),
            lattice_basis: spec.basis.columns().iter().map(vector_to_strings).collect(),
            generators: w.generator_translations().iter().map(vector_to_strings).collect(),
        }))
    }

    pub fn to_root_system(&self) -> Result<RootSystem> {
        let Entity::RootSystem(r) = self else {
            return Err(Error::Parse("not a root system document".into()));
        };
        let simple = r.simple_roots.iter().map(|v| vector_from_strings(v)).collect::<Result<Vec<_>>>()?;
        RootSystem::from_simple_roots(r.ambient_dim, simple)
    }

    pub fn to_diagram(&self) -> Result<CoxeterDiagram> {
        let Entity::CoxeterDiagram(d) = self else {
            return Err(Error::Parse("not a diagram document".into()));
        };
        if d.edges.iter().any(|e| e.i >= e.j || e.j >= d.nodes.len()) {
            return Err(Error::Parse("diagram edges must satisfy i < j < nodes".into()));
        }
        Ok(CoxeterDiagram { nodes: d.nodes.clone(), edges: d.edges.iter().map(|e| (e.i, e.j, e.label)).collect() })
    }

    pub fn to_group(&self) -> Result<CrystGroup> {
        let Entity::CrystallographicGroup(g) = self else {
            return Err(Error::Parse("not a group document".into()));
        };
        let (t, rank) = RootType::parse_label(&g.root_system)?;
        let rank = rank.ok_or_else(|| Error::Parse(format!("root system {:?} lacks a rank", g.root_system)))?;
        let r = RootSystem::build(t, rank)?;
        let w = weyl_group(t, rank)?;
        let cols = g.lattice_basis.iter().map(|v| vector_from_strings(v)).collect::<Result<Vec<_>>>()?;
        let family: LatticeFamily = g.lattice_family.parse()?;
        let spec = LatticeSpec::new(family, RationalMatrix::from_columns(r.ambient_dim(), &cols))?;
        let lat = Arc::new(InvariantLattice::new(spec, w)?);
        let gens = g.generators.iter().map(|v| vector_from_strings(v)).collect::<Result<Vec<_>>>()?;
        let mut out = CrystGroup::build_from_generators(lat, &gens)?;
        if let Some(f) = &g.family {
            let key = FamilyKey::parse(f)?;
            out = match g.rep {
                Some(i) => out.with_label(key, i),
                None => out.with_family(key),
            };
        }
        Ok(out)
    }

    fn render_text(&self) -> String {
        match self {
            Entity::RootSystem(r) => {
                let mut s = format!("root system {} in dimension {}, {} roots\n", r.label, r.ambient_dim, r.roots.len());
                for a in &r.roots {
                    s += &format!("  ({})\n", a.coords.join(", "));
                }
                s
            }
            Entity::CoxeterDiagram(d) => {
                let mut s = format!("diagram {} nodes: {}\n", d.label.as_deref().unwrap_or(""), d.nodes.join(" "));
                for e in &d.edges {
                    s += &format!("  {} -- {}  [{}]\n", d.nodes[e.i], d.nodes[e.j], e.label);
                }
                s
            }
            Entity::CrystallographicGroup(g) => {
                let mut s = format!(
                    "group {} over {} with lattice {}\n",
                    g.family.as_deref().unwrap_or("?"),
                    g.root_system,
                    g.lattice_family
                );
                if let Some(r) = g.rep {
                    s += &format!("  representative W{r}\n");
                }
                for (i, t) in g.generators.iter().enumerate() {
                    s += &format!("  (({}), s{})\n", t.join(", "), i + 1);
                }
                s
            }
        }
    }
}

pub fn export(entity: &Entity, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let doc = Document { schema_version: SCHEMA_VERSION, entity: entity.clone() };
            serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))
        }
        Format::Text => Ok(entity.render_text()),
    }
}

pub fn import(text: &str) -> Result<Entity> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::UnsupportedFormat(format!("schema_version {}", doc.schema_version)));
    }
    Ok(doc.entity)
}

/// Same lattice, same point group and generator translations equal modulo the lattice.
pub fn same_group(a: &CrystGroup, b: &CrystGroup) -> bool {
    let (la, lb) = (a.lattice(), b.lattice());
    la.spec().same_lattice(lb.spec())
        && a.point_group().generators() == b.point_group().generators()
        && a.generator_translations()
            .iter()
            .zip(b.generator_translations())
            .all(|(x, y)| la.contains(&(x - &y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_names() {
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!(matches!("yaml".parse::<Format>(), Err(Error::UnsupportedFormat(_))));
    }

    #[test]
    fn root_system_round_trip() {
        let r = RootSystem::build(RootType::B, 3).unwrap();
        let e = Entity::root_system(&r);
        let text = export(&e, Format::Json).unwrap();
        let back = import(&text).unwrap();
        assert_eq!(back, e);
        let Entity::RootSystem(rec) = &back else { panic!() };
        assert_eq!(rec.roots.len(), 18);
        assert_eq!(back.to_root_system().unwrap().roots(), r.roots());
        assert!(text.contains("\"schema_version\": 1"));
    }

    #[test]
    fn bad_documents() {
        assert!(import("{}").is_err());
        assert!(import(r#"{"schema_version": 9, "kind": "coxeter_diagram", "nodes": [], "edges": []}"#).is_err());
    }
}
