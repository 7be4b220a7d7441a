use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use crystrig_bench::{family, random_matrix};
use crystrig_core::exactla::{hermite_normal_form, smith_normal_form};
use crystrig_core::invariants::{verify_family, Catalog};
use crystrig_core::lattices::{enumerate_centerings, InvariantLattice};
use crystrig_core::rootsys::weight_lattice;
use crystrig_core::{chi_profile, CaseLabel, CrystGroup, FamilyKey, RootSystem, RootType, WeylGroup};

fn normal_forms(c: &mut Criterion) {
    let m = random_matrix(8, 7);
    c.bench_function("hnf 8x8", |b| b.iter(|| hermite_normal_form(black_box(&m))));
    c.bench_function("snf 8x8", |b| b.iter(|| smith_normal_form(black_box(&m))));
}

fn weyl_closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("weyl");
    g.sample_size(10);
    for (t, l) in [(RootType::B, 4), (RootType::F, 4), (RootType::D, 6)] {
        let gens = RootSystem::build(t, l).unwrap().simple_reflections();
        g.bench_function(t.label(l), |b| b.iter(|| WeylGroup::generate(black_box(&gens)).unwrap()));
    }
    g.finish();
}

fn groups(c: &mut Criterion) {
    let fam = Catalog::shipped().unwrap().family(FamilyKey::parse("C5-FL").unwrap()).unwrap();
    let lat = fam.lattice().unwrap();
    let trans = family("C5-FL")[2].generator_translations();
    let mut g = c.benchmark_group("groups");
    g.sample_size(10);
    g.bench_function("build C5-FL W3", |b| {
        b.iter(|| CrystGroup::build_from_generators(Arc::clone(&lat), black_box(&trans)).unwrap())
    });
    let b4 = family("B4-CCL");
    g.bench_function("chi profile B4-CCL W3", |b| b.iter(|| chi_profile(&b4[1], CaseLabel::Case42).unwrap()));
    g.bench_function("verify D6-FL", |b| {
        let d6 = Catalog::shipped().unwrap().family(FamilyKey::parse("D6-FL").unwrap()).unwrap();
        b.iter(|| verify_family(d6).unwrap())
    });
    g.finish();
}

fn centerings(c: &mut Criterion) {
    let r = RootSystem::build(RootType::A, 3).unwrap();
    let w = Arc::new(WeylGroup::of_root_system(&r).unwrap());
    let l = InvariantLattice::new(weight_lattice(&r), w).unwrap();
    c.bench_function("centerings A3-P index 8", |b| b.iter(|| enumerate_centerings(&l, 8).unwrap()));
}

criterion_group!(benches, normal_forms, weyl_closure, groups, centerings);
criterion_main!(benches);
