//! Exact integer and rational linear algebra.

mod commutant;
mod diophantine;
mod lattice;
mod matrix;
mod normal_form;
pub mod text;

pub use commutant::commutant_dimension;
pub use diophantine::{integer_kernel, solve_integer_linear, solve_integer_system, DiophantineSolution};
pub use lattice::{
    coordinates, covolume, lattice_contains, lattice_from_generators, lattice_index, same_lattice,
    sublattice_in_subspace, Index,
};
pub use matrix::{int_ratio, ratio, IntegerMatrix, RationalMatrix, RationalVector};
pub use normal_form::{elementary_divisors, hermite_normal_form, smith_normal_form};
