use crystrig_core::invariants::Catalog;
use crystrig_core::serial::{export, import, same_group, Entity, Format};
use crystrig_core::{FamilyKey, RootSystem, RootType, WeylGroup};

#[test]
fn group_round_trip() {
    let f = Catalog::shipped().unwrap().family(FamilyKey::parse("B4-CCL").unwrap()).unwrap();
    let w3 = f.build_rep(3).unwrap();
    let text = export(&Entity::group(&w3).unwrap(), Format::Json).unwrap();
    let back = import(&text).unwrap().to_group().unwrap();
    assert!(same_group(&w3, &back));
    assert_eq!(back.rep_index(), Some(3));
    assert!((0..w3.point_group().order() as u32).all(|g| w3.lattice().contains(&(&w3.t(g) - &back.t(g)))));
    // byte-identical on re-export
    assert_eq!(export(&Entity::group(&back).unwrap(), Format::Json).unwrap(), text);
}

#[test]
fn b3_root_records() {
    let r = RootSystem::build(RootType::B, 3).unwrap();
    let text = export(&Entity::root_system(&r), Format::Json).unwrap();
    let Entity::RootSystem(rec) = import(&text).unwrap() else { panic!("wrong kind") };
    assert_eq!(rec.roots.len(), 18);
    assert!(rec.roots.iter().all(|a| a.coords.iter().all(|x| x.contains('/'))));
}

#[test]
fn diagram_edges() {
    // B4: a path with one double bond at the short end
    let r = RootSystem::build(RootType::B, 4).unwrap();
    let d = WeylGroup::of_root_system(&r).unwrap().coxeter_diagram();
    let e = Entity::diagram(&d, Some("B4".into()));
    let back = import(&export(&e, Format::Json).unwrap()).unwrap();
    assert_eq!(back.to_diagram().unwrap(), d);
    assert_eq!(d.edges, vec![(0, 1, 3), (1, 2, 3), (2, 3, 4)]);
    let e6 = WeylGroup::of_root_system(&RootSystem::build(RootType::E, 6).unwrap()).unwrap().coxeter_diagram();
    assert_eq!(e6.edges.len(), 5);
    assert!(e6.edges.iter().all(|e| e.2 == 3));
}

#[test]
fn text_format_is_export_only() {
    let r = RootSystem::build(RootType::A, 2).unwrap();
    let t = export(&Entity::root_system(&r), Format::Text).unwrap();
    assert!(t.starts_with("root system A2"));
    assert!(import(&t).is_err());
}
