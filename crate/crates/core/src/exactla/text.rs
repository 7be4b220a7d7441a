//! Line-oriented matrix text format.
//!
//! ```text
//! 2 3
//! 1/1 0/1 -1/2
//! 0/1 3/1 1/1
//! ```
//!
//! The header holds the row and column counts; each following line holds one
//! row. Entries are written as `num/den`; plain integers are accepted on input.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::RationalMatrix;
use crate::error::{Error, Result};

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn write_matrix(m: &RationalMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", m.rows(), m.cols()).unwrap();
    for r in 0..m.rows() {
        let line: Vec<String> = m.row(r).iter().map(format_rational).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

/// Writes several matrices separated by blank lines.
pub fn write_matrices<'a>(mats: impl IntoIterator<Item = &'a RationalMatrix>) -> String {
    mats.into_iter().map(write_matrix).collect::<Vec<_>>().join("\n")
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_matrix(text: &str) -> Result<RationalMatrix> {
    let mut mats = parse_matrices(text)?;
    match mats.len() {
        1 => Ok(mats.remove(0)),
        n => Err(Error::Parse(format!("expected one matrix, found {n}"))),
    }
}

/// Parses a sequence of matrices, each introduced by its own header.
pub fn parse_matrices(text: &str) -> Result<Vec<RationalMatrix>> {
    let mut lines = content_lines(text);
    let mut out = Vec::new();
    while let Some(header) = lines.next() {
        let dims: Vec<&str> = header.split_whitespace().collect();
        let [r, c] = dims[..] else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let rows: usize = r.parse().map_err(|_| Error::Parse(format!("bad row count {r:?}")))?;
        let cols: usize = c.parse().map_err(|_| Error::Parse(format!("bad column count {c:?}")))?;
        if rows == 0 || cols == 0 {
            return Err(Error::Parse("matrix dimensions must be positive".into()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {i}")))?;
            let entries = line
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            if entries.len() != cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {cols}",
                    entries.len()
                )));
            }
            data.extend(entries);
        }
        out.push(RationalMatrix::new(rows, cols, data)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::matrix::ratio;

    #[test]
    fn round_trip() {
        let m = RationalMatrix::new(2, 2, vec![ratio(1, 2), ratio(-3, 1), ratio(0, 1), ratio(7, 9)]).unwrap();
        let text = write_matrix(&m);
        assert_eq!(text, "2 2\n1/2 -3/1\n0/1 7/9\n");
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn accepts_integers_and_reduces() {
        let m = parse_matrix("1 2\n4 6/4\n").unwrap();
        assert_eq!(m.get(0, 1), &ratio(3, 2));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_matrix("0 2\n").is_err());
        assert!(parse_matrix("1 2\n1\n").is_err());
        assert!(parse_matrix("1 1\n1/0\n").is_err());
        assert!(parse_matrix("2 1\n1\n").is_err());
    }
}
