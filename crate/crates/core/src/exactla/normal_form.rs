//! Hermite and Smith normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// Extended gcd with a non-negative gcd: returns `(g, x, y)` with `a x + b y = g`.
pub(crate) fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Column-style Hermite normal form.
///
/// Returns `(H, U)` with `H = M U`, `U` unimodular and `H` lower-triangular
/// echelon: each nonzero column starts with a positive pivot strictly below
/// the pivot of the previous column, and entries of a pivot row to the left
/// of its pivot lie in `[0, pivot)`. Zero columns come last. Two full-rank
/// bases span the same lattice exactly when their forms coincide.
pub fn hermite_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let mut h = m.clone();
    let n = m.cols();
    let mut u = IntegerMatrix::identity(n);
    let mut pc = 0;
    for r in 0..m.rows() {
        if pc == n {
            break;
        }
        for j in pc + 1..n {
            if h.get(r, j).is_zero() {
                continue;
            }
            if h.get(r, pc).is_zero() {
                h.swap_cols(pc, j);
                u.swap_cols(pc, j);
                continue;
            }
            let a = h.get(r, pc).clone();
            let b = h.get(r, j).clone();
            let (g, x, y) = xgcd(&a, &b);
            let (p, q, rr, s) = (x, y, -(&b / &g), &a / &g);
            h.col_combine(pc, j, &p, &q, &rr, &s);
            u.col_combine(pc, j, &p, &q, &rr, &s);
        }
        if h.get(r, pc).is_zero() {
            continue;
        }
        if h.get(r, pc).is_negative() {
            h.negate_col(pc);
            u.negate_col(pc);
        }
        let pivot = h.get(r, pc).clone();
        for k in 0..pc {
            let q = h.get(r, k).div_floor(&pivot);
            h.col_axpy(k, pc, &q);
            u.col_axpy(k, pc, &q);
        }
        pc += 1;
    }
    (h, u)
}

/// Smith normal form.
///
/// Returns `(S, U, V)` with `S = U M V`, `U` and `V` unimodular, and `S`
/// diagonal with positive entries `d_1 | d_2 | ... | d_r` followed by zeros.
pub fn smith_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    let x = s.get(r, c);
                    if !x.is_zero()
                        && best.is_none_or(|(br, bc)| x.abs() < s.get(br, bc).abs())
                    {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else {
                return (s, u, v);
            };
            s.swap_rows(t, br);
            u.swap_rows(t, br);
            s.swap_cols(t, bc);
            v.swap_cols(t, bc);

            let pivot = s.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..rows {
                let q = s.get(r, t).div_floor(&pivot);
                s.row_axpy(r, t, &q);
                u.row_axpy(r, t, &q);
                clean &= s.get(r, t).is_zero();
            }
            for c in t + 1..cols {
                let q = s.get(t, c).div_floor(&pivot);
                s.col_axpy(c, t, &q);
                v.col_axpy(c, t, &q);
                clean &= s.get(t, c).is_zero();
            }
            if !clean {
                continue;
            }
            // enforce divisibility by folding an offending row into row t
            let offending = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !s.get(r, c).is_multiple_of(&pivot)));
            match offending {
                Some(r) => {
                    let minus_one = -BigInt::one();
                    s.row_axpy(t, r, &minus_one);
                    u.row_axpy(t, r, &minus_one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Diagonal of a Smith form up to its rank.
pub fn elementary_divisors(m: &IntegerMatrix) -> Vec<BigInt> {
    let (s, _, _) = smith_normal_form(m);
    (0..s.rows().min(s.cols()))
        .map(|i| s.get(i, i).clone())
        .take_while(|d| !d.is_zero())
        .collect()
}
