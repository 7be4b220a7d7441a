use crystrig_core::invariants::{eta_check, reduced_eta_realizers, verify_family, CaseLabel, Catalog};
use crystrig_core::{catalog, Error, FamilyKey, LatticeFamily, RootType};

#[test]
fn every_listed_group_builds() {
    Catalog::shipped().unwrap().validate_groups().unwrap();
}

#[test]
fn representative_counts() {
    assert_eq!(catalog(RootType::D, 6, LatticeFamily::FL).unwrap().len(), 3);
    assert_eq!(catalog(RootType::B, 3, LatticeFamily::CL).unwrap().len(), 4);
    let b3 = catalog(RootType::B, 3, LatticeFamily::CCL).unwrap();
    assert_eq!(b3.len(), 2);
    assert!(b3[0].is_split() && !b3[1].is_split());
}

#[test]
fn counts_match_extension_classes() {
    // for n <= 2 the class count is |H^1|; for the larger families it bounds n
    for f in Catalog::shipped().unwrap().families() {
        let h = crystrig_core::crystgrp::extension_classes(&f.lattice().unwrap()).count();
        let h: usize = h.try_into().unwrap();
        if f.n <= 2 && !matches!(f.key.root_type, RootType::D) {
            assert_eq!(h, f.n, "{}", f.key);
        } else {
            assert!(h >= f.n, "{}", f.key);
        }
    }
}

#[test]
fn realizers_pass_eta() {
    for key in ["B3-CL", "C3-FL", "D6-FL", "A5-Lambda2"] {
        let f = Catalog::shipped().unwrap().family(FamilyKey::parse(key).unwrap()).unwrap();
        for w in f.build().unwrap() {
            let rs = reduced_eta_realizers(&w);
            assert_eq!(rs[0].tuple, w.generators());
            assert!(rs.iter().all(|r| eta_check(&w, &r.tuple)), "{key}");
        }
    }
}

#[test]
fn reports_separate_every_pair() {
    let cat = Catalog::shipped().unwrap();
    for f in cat.families().iter().filter(|f| f.n >= 2) {
        let r = verify_family(f).unwrap();
        assert!(r.all_separated(), "{}", r.render_text());
        assert_eq!(r.rows.len(), f.n);
    }
    let b4 = cat.family(FamilyKey::parse("B4-CCL").unwrap()).unwrap();
    assert_eq!(b4.case, CaseLabel::Case42);
    let r = verify_family(b4).unwrap();
    assert_eq!(r.rejected.len(), 2);
    assert!(r.render_text().contains("commuting-involution(s_1,s_4)"));
}

#[test]
fn unknown_family() {
    assert!(matches!(catalog(RootType::E, 7, LatticeFamily::Q7), Err(Error::UnknownCatalogEntry(_))));
}
