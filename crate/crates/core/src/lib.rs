//! Exact-arithmetic crystallographic groups built from irreducible root systems.

pub mod crystgrp;
pub mod error;
pub mod exactla;
pub mod invariants;
pub mod lattices;
pub mod rootsys;
pub mod serial;
pub mod weyl;

pub use crystgrp::{CrystGroup, FamilyKey, GroupElement};
pub use error::{Error, Result};
pub use exactla::{IntegerMatrix, RationalMatrix, RationalVector};
pub use invariants::{catalog, chi_profile, distinguish, CaseLabel, Catalog, ChiProfile, FamilyReport};
pub use lattices::InvariantLattice;
pub use rootsys::{LatticeFamily, LatticeSpec, RootSystem, RootType};
pub use weyl::{CoxeterDiagram, Elem, WeylGroup};
