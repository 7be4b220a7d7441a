//! Command dispatch for the `crystrig` binary.
//!
//! Every verb produces either plain text or a JSON object tagged with
//! `schema_version`. Failures produce a JSON error record and an exit status:
//! 2 for usage errors, 3 when a work ceiling is hit and 4 for internal
//! invariant violations.

use std::collections::BTreeSet;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crystrig_core::crystgrp::{extension_classes, DEFAULT_QUOTIENT_CEILING};
use crystrig_core::exactla::{commutant_dimension, lattice_index, RationalMatrix};
use crystrig_core::invariants::{chi_profile, verify_family, weyl_group, CaseFamily, Catalog};
use crystrig_core::lattices::{
    enumerate_centerings_with_ceiling, maximal_centering, GenusFingerprint, InvariantLattice,
    DEFAULT_CENTERING_WORK_CEILING,
};
use crystrig_core::rootsys::{family_lattice, root_lattice, weight_lattice};
use crystrig_core::serial::{self, export, Entity, SCHEMA_VERSION};
use crystrig_core::{CrystGroup, Error, FamilyKey, LatticeFamily, LatticeSpec, RootSystem, RootType, WeylGroup};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CEILING: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Parser, Debug, Clone)]
#[command(name = "crystrig", version, about = "Crystallographic groups over irreducible root systems")]
pub struct CommandRequest {
    /// Output format; `export` defaults to structured, everything else to text.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Work ceiling for Weyl closure, centering enumeration and finite quotients.
    #[arg(long, global = true, env = "CRYSTRIG_CEILING")]
    pub ceiling: Option<u128>,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    #[value(alias = "json")]
    Structured,
}

#[derive(Args, Debug, Clone)]
pub struct SystemArgs {
    /// Root system type: A, B, C, D, E, F or G.
    #[arg(long = "type", value_parser = parse_type)]
    pub root_type: RootType,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Args, Debug, Clone)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Lattice family: CL, CCL, FL, Omega, LambdaA, Q6, P6, Q7, P7, Q or P.
    #[arg(long)]
    pub lattice: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Verb {
    /// Roots of an irreducible root system.
    Rootsys {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value_t = RootsysShow::Summary)]
        show: RootsysShow,
    },
    /// The Weyl group and its Coxeter diagram.
    Weyl {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value_t = WeylShow::Order)]
        show: WeylShow,
    },
    /// A lattice with its Weyl group action.
    Lattice {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, value_enum, default_value_t = LatticeShow::Summary)]
        show: LatticeShow,
        /// Index bound for centering enumeration.
        #[arg(long, default_value_t = 8)]
        max_index: u64,
    },
    /// A catalogued crystallographic group.
    Group {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Representative index, 1 being the split group.
        #[arg(long)]
        rep: usize,
        #[arg(long, value_enum, default_value_t = GroupCheck::Summary)]
        check: GroupCheck,
        /// Modulus m for the quotient W/mT.
        #[arg(long, default_value_t = 2)]
        modulus: u64,
    },
    /// Runs the distinguishing battery on catalogued families.
    Verify {
        /// Family such as D6-FL; all families when omitted.
        #[arg(long)]
        family: Option<String>,
    },
    /// Serializes a root system, Coxeter diagram or group.
    Export {
        #[arg(long, value_enum)]
        entity: ExportEntity,
        #[arg(long = "type", value_parser = parse_type)]
        root_type: RootType,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long)]
        rep: Option<usize>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootsysShow {
    Summary,
    Roots,
    Simple,
    Cartan,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeylShow {
    Order,
    Diagram,
    Reflections,
    Automorphisms,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeShow {
    Summary,
    Centerings,
    Maximal,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupCheck {
    Summary,
    Split,
    Cocycle,
    Profile,
    Classes,
    Genus,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportEntity {
    Rootsys,
    Diagram,
    Group,
}

fn parse_type(s: &str) -> Result<RootType, String> {
    match RootType::parse_label(s) {
        Ok((t, None)) => Ok(t),
        Ok((_, Some(_))) => Err("give the rank with --rank".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Exit status and the text written to stdout or stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_status(e: &Error) -> u8 {
    match e {
        Error::GroupTooLarge { .. }
        | Error::DiagramTooLarge { .. }
        | Error::BoundTooLarge { .. }
        | Error::QuotientTooLarge { .. } => EXIT_CEILING,
        Error::InconsistentVectorSystem(_) | Error::Catalog(_) | Error::MixedParents => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::NotASublattice(_) => "not_a_sublattice",
        Error::UnsupportedType(_) => "unsupported_type",
        Error::UnsupportedFamily(_) => "unsupported_family",
        Error::NotARoot => "not_a_root",
        Error::GroupTooLarge { .. } => "group_too_large",
        Error::DiagramTooLarge { .. } => "diagram_too_large",
        Error::BoundTooLarge { .. } => "bound_too_large",
        Error::QuotientTooLarge { .. } => "quotient_too_large",
        Error::InconsistentVectorSystem(_) => "inconsistent_vector_system",
        Error::MixedParents => "mixed_parents",
        Error::NotAnInvolution => "not_an_involution",
        Error::NotInvariant(_) => "not_invariant",
        Error::UnknownCatalogEntry(_) => "unknown_catalog_entry",
        Error::FamilyMismatch => "family_mismatch",
        Error::UnsupportedFormat(_) => "unsupported_format",
        Error::Parse(_) => "parse",
        Error::Catalog(_) => "catalog",
    }
}

/// One-line JSON error record.
pub fn error_record(status: u8, kind: &str, message: &str) -> String {
    json!({
        "schema_version": SCHEMA_VERSION,
        "status": status,
        "kind": kind,
        "message": message,
    })
    .to_string()
}

fn failure(e: &Error) -> Outcome {
    let status = exit_status(e);
    Outcome { status, stdout: String::new(), stderr: error_record(status, error_kind(e), &e.to_string()) + "\n" }
}

/// A result in both renderings.
struct Report {
    text: String,
    value: Value,
}

impl Report {
    fn new(text: impl Into<String>, value: Value) -> Self {
        Report { text: text.into(), value }
    }
}

type Res<T> = Result<T, Error>;

pub fn run(req: &CommandRequest) -> Outcome {
    let (verb, result) = match &req.verb {
        Verb::Rootsys { system, show } => ("rootsys", rootsys(system, *show)),
        Verb::Weyl { system, show } => ("weyl", weyl(req, system, *show)),
        Verb::Lattice { lattice, show, max_index } => ("lattice", lattice_cmd(req, lattice, *show, *max_index)),
        Verb::Group { lattice, rep, check, modulus } => ("group", group_cmd(req, lattice, *rep, *check, *modulus)),
        Verb::Verify { family } => ("verify", verify(family.as_deref())),
        Verb::Export { entity, root_type, rank, lattice, rep } => {
            return match export_cmd(req, *entity, *root_type, *rank, lattice.as_deref(), *rep) {
                Ok(s) => Outcome { status: 0, stdout: s, stderr: String::new() },
                Err(e) => failure(&e),
            }
        }
    };
    match result {
        Ok((r, status)) => {
            let stdout = match req.format.unwrap_or(OutputFormat::Text) {
                OutputFormat::Text => r.text,
                OutputFormat::Structured => {
                    let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": verb });
                    if let (Value::Object(dst), Value::Object(src)) = (&mut v, r.value) {
                        dst.extend(src);
                    }
                    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
                }
            };
            let stderr = if status == 0 {
                String::new()
            } else {
                error_record(status, "verification_failed", "some pair of representatives was not separated") + "\n"
            };
            Outcome { status, stdout, stderr }
        }
        Err(e) => failure(&e),
    }
}

fn system(args: &SystemArgs) -> Res<RootSystem> {
    RootSystem::build(args.root_type, args.rank)
}

fn weyl_for(req: &CommandRequest, args: &SystemArgs) -> Res<Arc<WeylGroup>> {
    match req.ceiling {
        Some(c) => {
            let r = system(args)?;
            let cap = usize::try_from(c).unwrap_or(usize::MAX);
            Ok(Arc::new(WeylGroup::generate_with_ceiling(&r.simple_reflections(), cap)?))
        }
        None => weyl_group(args.root_type, args.rank),
    }
}

fn lattice_spec(args: &LatticeArgs) -> Res<LatticeSpec> {
    let family: LatticeFamily = args.lattice.parse()?;
    let r = system(&args.system)?;
    let spec = match family {
        LatticeFamily::QofR => root_lattice(&r),
        LatticeFamily::PofR => weight_lattice(&r),
        f => family_lattice(f, args.system.rank)?,
    };
    if spec.ambient_dim() != r.ambient_dim() {
        return Err(Error::UnsupportedFamily(format!("{} does not live beside {}", args.lattice, r.label())));
    }
    Ok(spec)
}

/// `[a b; c d]` on one line.
fn inline(m: &impl std::fmt::Display) -> String {
    let rows: Vec<String> = m
        .to_string()
        .lines()
        .map(|r| r.trim().trim_start_matches('[').trim_end_matches(']').trim().to_string())
        .filter(|r| !r.is_empty())
        .collect();
    format!("[{}]", rows.join("; "))
}

fn vec_strings(v: &crystrig_core::RationalVector) -> Value {
    json!(serial::vector_to_strings(v))
}

fn rootsys(args: &SystemArgs, show: RootsysShow) -> Res<(Report, u8)> {
    let r = system(args)?;
    let report = match show {
        RootsysShow::Summary => {
            let pos = r.positive_roots().len();
            Report::new(
                format!(
                    "{}: rank {}, ambient dimension {}, {} roots ({} positive)\n",
                    r.label(),
                    r.rank(),
                    r.ambient_dim(),
                    r.roots().len(),
                    pos
                ),
                json!({ "label": r.label(), "rank": r.rank(), "ambient_dim": r.ambient_dim(),
                        "roots": r.roots().len(), "positive_roots": pos }),
            )
        }
        RootsysShow::Roots | RootsysShow::Simple => {
            let list = if show == RootsysShow::Roots { r.roots().to_vec() } else { r.simple_roots().to_vec() };
            Report::new(
                list.iter().map(|v| format!("{v}\n")).collect::<String>(),
                json!({ "label": r.label(), "vectors": list.iter().map(vec_strings).collect::<Vec<_>>() }),
            )
        }
        RootsysShow::Cartan => {
            let c = r.cartan_matrix();
            let rows: Vec<Vec<String>> = c.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect();
            Report::new(
                rows.iter().map(|r| r.join(" ") + "\n").collect::<String>(),
                json!({ "label": r.label(), "cartan": rows }),
            )
        }
    };
    Ok((report, 0))
}

fn weyl(req: &CommandRequest, args: &SystemArgs, show: WeylShow) -> Res<(Report, u8)> {
    let label = system(args)?.label();
    let report = match show {
        WeylShow::Order => {
            let w = weyl_for(req, args)?;
            Report::new(format!("{}\n", w.order()), json!({ "label": label, "order": w.order() }))
        }
        WeylShow::Diagram | WeylShow::Automorphisms => {
            // the diagram only needs the generators
            let r = system(args)?;
            let cm = crystrig_core::weyl::coxeter_matrix_of(&r.simple_reflections());
            let d = crystrig_core::CoxeterDiagram::from_matrix(&cm);
            if show == WeylShow::Diagram {
                Report::new(
                    d.to_adjacency_text(),
                    json!({ "label": label,
                            "nodes": d.nodes,
                            "edges": d.edges.iter().map(|&(i, j, m)| json!({"i": i, "j": j, "label": m})).collect::<Vec<_>>() }),
                )
            } else {
                let autos = d.automorphisms()?;
                let text = autos
                    .iter()
                    .map(|p| p.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ") + "\n")
                    .collect::<String>();
                Report::new(text, json!({ "label": label, "automorphisms": autos }))
            }
        }
        WeylShow::Reflections => {
            let w = weyl_for(req, args)?;
            let refl = w.classify_reflections();
            Report::new(
                format!("{} reflections\n", refl.len()),
                json!({ "label": label, "reflections": refl.len() }),
            )
        }
    };
    Ok((report, 0))
}

fn lattice_cmd(req: &CommandRequest, args: &LatticeArgs, show: LatticeShow, max_index: u64) -> Res<(Report, u8)> {
    let spec = lattice_spec(args)?;
    let r = system(&args.system)?;
    let w = weyl_for(req, &args.system)?;
    let l = InvariantLattice::new(spec.clone(), w)?;
    let ceiling = req.ceiling.unwrap_or(DEFAULT_CENTERING_WORK_CEILING);
    let name = format!("{}-{}", r.label(), args.lattice);
    let report = match show {
        LatticeShow::Summary => {
            let over_q = lattice_index(&spec.basis, &root_lattice(&r).basis).ok().map(|i| i.to_string());
            let in_p = lattice_index(&weight_lattice(&r).basis, &spec.basis).ok().map(|i| i.to_string());
            let mats: Vec<RationalMatrix> = l.generator_actions().iter().map(|a| a.to_rational()).collect();
            let comm = commutant_dimension(&mats)?;
            let text = format!(
                "{name}: rank {}, [L:Q] = {}, [P:L] = {}, commutant dimension {comm}\n{}",
                l.rank(),
                over_q.as_deref().unwrap_or("n/a"),
                in_p.as_deref().unwrap_or("n/a"),
                spec.basis
            );
            Report::new(
                text,
                json!({ "lattice": name, "rank": l.rank(), "index_over_q": over_q, "index_in_p": in_p,
                        "commutant_dimension": comm,
                        "basis": spec.basis.columns().iter().map(vec_strings).collect::<Vec<_>>() }),
            )
        }
        LatticeShow::Centerings => {
            let cs = enumerate_centerings_with_ceiling(&l, max_index, ceiling)?;
            let text = cs.iter().map(|c| format!("index {}: {}\n", c.index, inline(&c.coords))).collect::<String>();
            Report::new(
                format!("{} centerings of index <= {max_index}\n{text}", cs.len()),
                json!({ "lattice": name, "max_index": max_index,
                        "centerings": cs.iter().map(|c| json!({"index": c.index.to_string(),
                            "basis": c.sub_basis.columns().iter().map(vec_strings).collect::<Vec<_>>()})).collect::<Vec<_>>() }),
            )
        }
        LatticeShow::Maximal => {
            let cs = enumerate_centerings_with_ceiling(&l, max_index, ceiling)?;
            let maximal: BTreeSet<String> = cs.iter().map(|c| inline(&maximal_centering(c, &l).coords)).collect();
            Report::new(
                format!(
                    "{} maximal centering classes from index <= {max_index}\n{}",
                    maximal.len(),
                    maximal.iter().map(|m| format!("{m}\n")).collect::<String>()
                ),
                json!({ "lattice": name, "max_index": max_index, "maximal": maximal }),
            )
        }
    };
    Ok((report, 0))
}

fn catalog_family(key: FamilyKey) -> Res<&'static CaseFamily> {
    Catalog::shipped()?.family(key)
}

fn family_key(args: &LatticeArgs) -> Res<FamilyKey> {
    Ok(FamilyKey::new(args.system.root_type, args.system.rank, args.lattice.parse()?))
}

fn catalog_group(args: &LatticeArgs, rep: usize) -> Res<(&'static CaseFamily, CrystGroup)> {
    let fam = catalog_family(family_key(args)?)?;
    let entry = fam.rep(rep)?;
    if entry.invalid {
        return Err(Error::UnknownCatalogEntry(format!(
            "{} W{rep} is listed for reference only and does not define a group",
            fam.key
        )));
    }
    Ok((fam, fam.build_rep(rep)?))
}

fn group_cmd(req: &CommandRequest, args: &LatticeArgs, rep: usize, check: GroupCheck, m: u64) -> Res<(Report, u8)> {
    let (fam, w) = catalog_group(args, rep)?;
    let name = w.name();
    let report = match check {
        GroupCheck::Summary => {
            let gens: Vec<String> = w.generators().iter().map(|z| w.describe(z)).collect();
            Report::new(
                format!(
                    "{name}: {} of {} classes, {}\n{}",
                    rep,
                    fam.n,
                    if w.is_split() { "split" } else { "non-split" },
                    gens.iter().map(|g| format!("  {g}\n")).collect::<String>()
                ),
                json!({ "group": name, "split": w.is_split(), "generators": gens }),
            )
        }
        GroupCheck::Split => {
            let wit = w.split_witness();
            Report::new(
                format!("{}\n", wit.is_some()),
                json!({ "group": name, "split": wit.is_some(), "witness": wit.map(|s| vec_strings(&s.v)) }),
            )
        }
        GroupCheck::Cocycle => {
            let exhaustive = w.point_group().order() <= 2000;
            if exhaustive {
                w.check_cocycle_exhaustive()?;
            } else {
                w.check_cocycle_sampled(200_000)?;
            }
            let how = if exhaustive { "exhaustive" } else { "sampled" };
            Report::new(format!("cocycle condition holds ({how})\n"), json!({ "group": name, "cocycle": true, "mode": how }))
        }
        GroupCheck::Profile => {
            let p = chi_profile(&w, fam.case)?;
            let text = p
                .verdicts
                .iter()
                .map(|v| {
                    let mut s = format!("{}: {}", v.predicate, v.holds);
                    if let Some(wit) = &v.witness {
                        s += &format!("  [{wit}]");
                    }
                    s + "\n"
                })
                .collect::<String>();
            Report::new(
                format!("{name} ({}, {} realizer tuple(s))\n{text}", fam.case, p.realizers),
                json!({ "group": name, "profile": serde_json::to_value(&p).expect("profile serializes") }),
            )
        }
        GroupCheck::Classes => {
            let h = extension_classes(w.lattice());
            let inv: Vec<String> = h.invariants.iter().map(ToString::to_string).collect();
            Report::new(
                format!("extension classes: {} (cyclic factors {})\n", h.count(), if inv.is_empty() { "none".into() } else { inv.join(", ") }),
                json!({ "lattice": fam.key.to_string(), "classes": h.count().to_string(), "invariants": inv }),
            )
        }
        GroupCheck::Genus => {
            let ceiling = req.ceiling.unwrap_or(DEFAULT_QUOTIENT_CEILING);
            let q = w.finite_quotient_with_ceiling(m, ceiling)?;
            let f = GenusFingerprint::of_quotient(&q);
            let hist: Vec<String> = f.order_histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            Report::new(
                format!(
                    "W/{m}T: order {}, center {}, derived subgroup {}, abelianization {:?}\n  element orders {}\n",
                    f.order,
                    f.center_order,
                    f.derived_order,
                    f.abelian_invariants,
                    hist.join(" ")
                ),
                json!({ "group": name, "modulus": m, "order": f.order, "center_order": f.center_order,
                        "derived_order": f.derived_order, "abelian_invariants": f.abelian_invariants,
                        "order_histogram": f.order_histogram }),
            )
        }
    };
    Ok((report, 0))
}

fn verify(family: Option<&str>) -> Res<(Report, u8)> {
    let cat = Catalog::shipped()?;
    let fams: Vec<&CaseFamily> = match family {
        Some(k) => vec![cat.family(FamilyKey::parse(k)?)?],
        None => {
            cat.validate_groups()?;
            cat.families().iter().collect()
        }
    };
    let mut text = String::new();
    let mut values = Vec::new();
    let mut ok = true;
    for f in fams {
        let r = verify_family(f)?;
        ok &= r.all_separated();
        text += &r.render_text();
        text.push('\n');
        values.push(serde_json::to_value(&r).expect("report serializes"));
    }
    let status = if ok { 0 } else { EXIT_INTERNAL };
    Ok((Report::new(text, json!({ "all_separated": ok, "families": values })), status))
}

fn export_cmd(
    req: &CommandRequest,
    entity: ExportEntity,
    t: RootType,
    rank: usize,
    lattice: Option<&str>,
    rep: Option<usize>,
) -> Res<String> {
    let format = match req.format.unwrap_or(OutputFormat::Structured) {
        OutputFormat::Text => serial::Format::Text,
        OutputFormat::Structured => serial::Format::Json,
    };
    let r = RootSystem::build(t, rank)?;
    let e = match entity {
        ExportEntity::Rootsys => Entity::root_system(&r),
        ExportEntity::Diagram => {
            let cm = crystrig_core::weyl::coxeter_matrix_of(&r.simple_reflections());
            Entity::diagram(&crystrig_core::CoxeterDiagram::from_matrix(&cm), Some(r.label()))
        }
        ExportEntity::Group => {
            let lattice = lattice.ok_or_else(|| Error::Parse("--lattice is required for groups".into()))?;
            let rep = rep.ok_or_else(|| Error::Parse("--rep is required for groups".into()))?;
            let args = LatticeArgs { system: SystemArgs { root_type: t, rank }, lattice: lattice.into() };
            Entity::group(&catalog_group(&args, rep)?.1)?
        }
    };
    let mut out = export(&e, format)?;
    if !out.ends_with('\n') {
        out.push('\n');
    }
    Ok(out)
}
