use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::RationalMatrix;
use crate::error::{Error, Result};

/// Dimension of `{X : X M = M X for every M}` over the rationals.
///
/// The unknown `X` is flattened row-major and the commutation constraints of
/// all matrices are stacked into one `(k n^2) x n^2` system.
pub fn commutant_dimension(mats: &[RationalMatrix]) -> Result<usize> {
    let Some(first) = mats.first() else {
        return Err(Error::DimensionMismatch("no matrices given".into()));
    };
    let n = first.rows();
    if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::DimensionMismatch("matrices must be square of equal size".into()));
    }
    let nn = n * n;
    let mut data = vec![BigRational::zero(); mats.len() * nn * nn];
    for (t, m) in mats.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = t * nn + i * n + j;
                let base = row * nn;
                // (X M)_{ij} = sum_k x_{ik} m_{kj}
                for k in 0..n {
                    data[base + i * n + k] += m.get(k, j);
                }
                // (M X)_{ij} = sum_k m_{ik} x_{kj}
                for k in 0..n {
                    data[base + k * n + j] -= m.get(i, k);
                }
            }
        }
    }
    let system = RationalMatrix::new(mats.len() * nn, nn, data)?;
    Ok(nn - system.rank())
}
