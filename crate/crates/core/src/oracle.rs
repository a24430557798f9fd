//! Recursion-only construction of the triangle.
//!
//! The table is built from the four seeds `H(0,0) = H(1,0) = H(1,1) = 0`,
//! `H(2,1) = 1` and the two recursions
//!
//! ```text
//! (A) H(r,k) = H(r-1,k)   + H(r-2,k)      defined for k <= r-2
//! (B) H(r,k) = H(r-1,k-1) + H(r-2,k-2)    defined for k >= 2
//! ```
//!
//! Nothing here touches the closed form or the `fib` module, which is what
//! makes it usable as ground truth for them.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fib::{ExactInteger, FibIndex};
use crate::triangle::{self, Evaluator, GridPoint, TriangleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("max_row must be at least 2, got {0}")]
    TooSmall(u32),
    #[error("recursions disagree at H({r},{k}): {a} (vertical) vs {b} (diagonal)")]
    Inconsistent {
        r: u32,
        k: u32,
        a: ExactInteger,
        b: ExactInteger,
    },
    #[error("H({r},{k}) is reachable by neither recursion")]
    Unreachable { r: u32, k: u32 },
}

#[derive(Debug, Clone)]
pub struct RecursiveTable {
    max_row: u32,
    rows: Vec<Vec<ExactInteger>>,
}

impl RecursiveTable {
    pub fn build(max_row: u32) -> Result<Self, OracleError> {
        if max_row < 2 {
            return Err(OracleError::TooSmall(max_row));
        }
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::zero()], vec![BigInt::zero(); 2]];
        for r in 2..=max_row {
            let mut current = Vec::with_capacity(r as usize + 1);
            for k in 0..=r {
                let vertical = (k + 2 <= r)
                    .then(|| &rows[r as usize - 1][k as usize] + &rows[r as usize - 2][k as usize]);
                let diagonal = (k >= 2).then(|| {
                    &rows[r as usize - 1][k as usize - 1] + &rows[r as usize - 2][k as usize - 2]
                });
                let value = match (vertical, diagonal) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(OracleError::Inconsistent { r, k, a, b })
                    }
                    (Some(a), _) | (None, Some(a)) => a,
                    (None, None) if (r, k) == (2, 1) => BigInt::from(1),
                    (None, None) => return Err(OracleError::Unreachable { r, k }),
                };
                current.push(value);
            }
            rows.push(current);
        }
        Ok(Self { max_row, rows })
    }

    pub fn max_row(&self) -> u32 {
        self.max_row
    }

    pub fn get(&self, p: GridPoint) -> Option<&ExactInteger> {
        self.rows.get(p.r() as usize)?.get(p.k() as usize)
    }

    pub fn row(&self, r: u32) -> Option<&[ExactInteger]> {
        self.rows.get(r as usize).map(Vec::as_slice)
    }

    pub fn entry_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Coordinates where the table and the closed form disagree.
    pub fn mismatches(&self) -> Vec<GridPoint> {
        let mut bad = Vec::new();
        for (r, values) in self.rows.iter().enumerate() {
            let closed = triangle::row(r as u32);
            for (k, v) in values.iter().enumerate() {
                if *v != closed[k] {
                    bad.push(GridPoint::new(r as i64, k as i64).expect("table coordinate"));
                }
            }
        }
        bad
    }
}

/// Outcome of comparing a recursion-built table against the closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub max_row: u32,
    pub entries: usize,
    pub mismatches: Vec<GridPoint>,
}

pub fn cross_check(table: &RecursiveTable) -> CrossCheck {
    CrossCheck {
        max_row: table.max_row,
        entries: table.entry_count(),
        mismatches: table.mismatches(),
    }
}

impl Evaluator for RecursiveTable {
    fn h(&self, r: i64, k: i64) -> Result<ExactInteger, TriangleError> {
        let p = GridPoint::new(r, k)?;
        self.get(p).cloned().ok_or(TriangleError::BeyondTable {
            r,
            max_row: i64::from(self.max_row),
        })
    }

    /// `F(n) = H(n+1, 1)`, with the negafibonacci sign rule for `n < 0`.
    fn fib(&self, n: FibIndex) -> Result<ExactInteger, TriangleError> {
        let m = n.unsigned_abs() as i64;
        let v = self.h(m + 1, 1)?;
        Ok(if n < 0 && m % 2 == 0 { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn small_tables() {
        let t = RecursiveTable::build(2).unwrap();
        assert_eq!(t.row(2).unwrap(), ints(&[0, 1, 0]).as_slice());
        let t = RecursiveTable::build(4).unwrap();
        assert_eq!(t.h(4, 2).unwrap(), BigInt::from(1));
        let t = RecursiveTable::build(6).unwrap();
        assert_eq!(t.row(6).unwrap(), ints(&[0, 5, 3, 4, 3, 5, 0]).as_slice());
    }

    #[test]
    fn rejects_tiny_table() {
        assert_eq!(
            RecursiveTable::build(1).unwrap_err(),
            OracleError::TooSmall(1)
        );
    }

    #[test]
    fn agrees_with_closed_form() {
        for max_row in [2, 50, 300] {
            let t = RecursiveTable::build(max_row).unwrap();
            let report = cross_check(&t);
            assert!(report.mismatches.is_empty(), "max_row {max_row}");
            assert_eq!(report.entries, ((max_row + 1) * (max_row + 2) / 2) as usize);
        }
    }

    #[test]
    fn symmetric_without_closed_form() {
        let t = RecursiveTable::build(200).unwrap();
        for r in 0..=200u32 {
            let row = t.row(r).unwrap();
            for k in 0..row.len() {
                assert_eq!(row[k], row[row.len() - 1 - k]);
            }
        }
    }

    #[test]
    fn fibonacci_from_table() {
        let t = RecursiveTable::build(30).unwrap();
        assert_eq!(t.fib(10).unwrap(), BigInt::from(55));
        assert_eq!(t.fib(-4).unwrap(), BigInt::from(-3));
        assert_eq!(t.lucas(5).unwrap(), BigInt::from(11));
        assert_eq!(t.lucas(-2).unwrap(), BigInt::from(3));
        assert!(matches!(t.fib(40), Err(TriangleError::BeyondTable { .. })));
    }
}
