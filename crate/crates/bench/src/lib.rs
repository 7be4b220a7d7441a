//! Shared fixtures for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crystrig_core::{Catalog, CrystGroup, FamilyKey, IntegerMatrix};

/// Seeded `n x n` integer matrix with entries in `-9..=9`.
pub fn random_matrix(n: usize, seed: u64) -> IntegerMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    IntegerMatrix::from_fn(n, n, |_, _| rng.gen_range(-9i64..=9).into())
}

/// All valid groups of a catalogued family, such as `"B4-CL"`.
pub fn family(key: &str) -> Vec<CrystGroup> {
    let cat = Catalog::shipped().expect("shipped catalog loads");
    cat.family(FamilyKey::parse(key).expect("valid key"))
        .and_then(|f| f.build())
        .expect("family builds")
}
