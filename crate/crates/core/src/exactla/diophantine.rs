//! Integer solutions of rational linear systems.
//!
//! Solutions are integral in the coordinates of the unknown vector as given.
//! Callers that want solutions in a lattice express the unknowns in lattice
//! coordinates first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{IntegerMatrix, RationalMatrix, RationalVector};
use super::normal_form::smith_normal_form;

/// A particular integer solution together with a basis of the integer kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiophantineSolution {
    pub particular: Vec<BigInt>,
    pub kernel_basis: Vec<Vec<BigInt>>,
}

impl DiophantineSolution {
    pub fn kernel_rank(&self) -> usize {
        self.kernel_basis.len()
    }

    /// `particular + sum(c_i k_i)`.
    pub fn point(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coeffs.len(), self.kernel_basis.len(), "one coefficient per kernel vector");
        let mut x = self.particular.clone();
        for (c, k) in coeffs.iter().zip(&self.kernel_basis) {
            if c.is_zero() {
                continue;
            }
            for (xi, ki) in x.iter_mut().zip(k) {
                *xi += c * ki;
            }
        }
        x
    }
}

/// Scales each row of `[A | b]` by the lcm of its denominators.
fn clear_denominators(a: &RationalMatrix, b: &RationalVector) -> (IntegerMatrix, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(a.rows() * a.cols());
    let mut rhs = Vec::with_capacity(a.rows());
    for r in 0..a.rows() {
        let l = a
            .row(r)
            .iter()
            .chain(std::iter::once(&b[r]))
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for x in a.row(r) {
            rows.push((x * &l).to_integer());
        }
        rhs.push((&b[r] * &l).to_integer());
    }
    let m = IntegerMatrix::new(a.rows(), a.cols(), rows).expect("shape preserved");
    (m, rhs)
}

/// Solves `A x = b` over the integers.
pub fn solve_integer_system(a: &IntegerMatrix, b: &[BigInt]) -> Option<DiophantineSolution> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let (s, u, v) = smith_normal_form(a);
    let c = u.mul_vec(b);
    let rank = (0..s.rows().min(s.cols()))
        .take_while(|&i| !s.get(i, i).is_zero())
        .count();
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        if i < rank {
            let (q, rem) = c[i].div_rem(s.get(i, i));
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c[i].is_zero() {
            return None;
        }
    }
    let particular = v.mul_vec(&y);
    let kernel_basis = (rank..a.cols()).map(|j| v.column(j)).collect();
    Some(DiophantineSolution { particular, kernel_basis })
}

/// Integer solutions of `A x = b` for rational `A` and `b`.
///
/// Returns `None` when no integral `x` exists, including when the system has
/// no rational solution at all.
pub fn solve_integer_linear(a: &RationalMatrix, b: &RationalVector) -> Option<DiophantineSolution> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let (m, rhs) = clear_denominators(a, b);
    solve_integer_system(&m, &rhs)
}

/// Basis of the integer kernel `{x in Z^n : A x = 0}`.
pub fn integer_kernel(a: &RationalMatrix) -> Vec<Vec<BigInt>> {
    solve_integer_linear(a, &RationalVector::zeros(a.rows()))
        .expect("homogeneous systems are solvable")
        .kernel_basis
}
