//! Hosoya triangle entries from the closed form `H(r, k) = F(k) F(r - k)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fib::{fib, lucas, ExactInteger, FibIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("coordinate ({r}, {k}) is outside the triangle (need 0 <= k <= r)")]
    OutOfRange { r: i64, k: i64 },
    #[error("row {r} is beyond the table (max row {max_row})")]
    BeyondTable { r: i64, max_row: i64 },
}

/// A `(row, position)` coordinate with `0 <= k <= r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct GridPoint {
    r: i64,
    k: i64,
}

impl GridPoint {
    pub fn new(r: i64, k: i64) -> Result<Self, TriangleError> {
        if k < 0 || k > r {
            return Err(TriangleError::OutOfRange { r, k });
        }
        Ok(Self { r, k })
    }

    pub fn r(self) -> i64 {
        self.r
    }

    pub fn k(self) -> i64 {
        self.k
    }

    /// Same row, position reflected about the row's centre.
    pub fn mirror(self) -> Self {
        Self {
            r: self.r,
            k: self.r - self.k,
        }
    }

    /// Horizontal coordinate of the centred layout, in units of the lattice
    /// spacing: `k - r/2`. Returned doubled (`2k - r`) to stay integral.
    pub fn twice_x(self) -> i64 {
        2 * self.k - self.r
    }
}

impl TryFrom<(i64, i64)> for GridPoint {
    type Error = TriangleError;

    fn try_from((r, k): (i64, i64)) -> Result<Self, Self::Error> {
        Self::new(r, k)
    }
}

impl From<GridPoint> for (i64, i64) {
    fn from(p: GridPoint) -> Self {
        (p.r, p.k)
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.r, self.k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HosoyaEntry {
    pub point: GridPoint,
    pub value: ExactInteger,
}

/// Source of triangle and sequence values.
///
/// The identity catalog evaluates every claim through this trait so the same
/// checks can run against the closed form ([`ClosedForm`]) or against the
/// recursion-built table in [`crate::oracle`].
pub trait Evaluator: Sync {
    fn h(&self, r: i64, k: i64) -> Result<ExactInteger, TriangleError>;
    fn fib(&self, n: FibIndex) -> Result<ExactInteger, TriangleError>;
    fn lucas(&self, n: FibIndex) -> Result<ExactInteger, TriangleError> {
        Ok(self.fib(n - 1)? + self.fib(n + 1)?)
    }

    fn at(&self, p: GridPoint) -> Result<ExactInteger, TriangleError> {
        self.h(p.r(), p.k())
    }
}

/// Production evaluator: closed form over [`crate::fib`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedForm;

impl Evaluator for ClosedForm {
    fn h(&self, r: i64, k: i64) -> Result<ExactInteger, TriangleError> {
        Ok(entry(GridPoint::new(r, k)?))
    }

    fn fib(&self, n: FibIndex) -> Result<ExactInteger, TriangleError> {
        Ok(fib(n))
    }

    fn lucas(&self, n: FibIndex) -> Result<ExactInteger, TriangleError> {
        Ok(lucas(n))
    }
}

pub fn entry(p: GridPoint) -> ExactInteger {
    fib(p.k) * fib(p.r - p.k)
}

/// `H(r, k)` from raw coordinates.
pub fn entry_at(r: i64, k: i64) -> Result<ExactInteger, TriangleError> {
    Ok(entry(GridPoint::new(r, k)?))
}

/// Row `r` as a dense list, edge zeros included.
pub fn row(r: u32) -> Vec<ExactInteger> {
    let r = i64::from(r);
    // F(k) for k = 0..=r, reused from both ends.
    let fibs: Vec<ExactInteger> = (0..=r).map(fib).collect();
    (0..=r)
        .map(|k| &fibs[k as usize] * &fibs[(r - k) as usize])
        .collect()
}

/// `H(d + t, t)` for `t = 0..len`: the Fibonacci sequence scaled by `F(d)`.
pub fn diagonal(d: u32, len: usize) -> Vec<ExactInteger> {
    let scale = fib(i64::from(d));
    (0..len as i64).map(|t| &scale * fib(t)).collect()
}

/// A contiguous block of rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleWindow {
    pub first_row: u32,
    pub last_row: u32,
    pub rows: Vec<Vec<ExactInteger>>,
}

impl TriangleWindow {
    pub fn new(first_row: u32, last_row: u32) -> Self {
        let rows = (first_row..=last_row).map(row).collect();
        Self {
            first_row,
            last_row,
            rows,
        }
    }

    pub fn row(&self, r: u32) -> Option<&[ExactInteger]> {
        r.checked_sub(self.first_row)
            .and_then(|i| self.rows.get(i as usize))
            .map(Vec::as_slice)
    }

    pub fn value(&self, p: GridPoint) -> Option<&ExactInteger> {
        let r = u32::try_from(p.r()).ok()?;
        self.row(r)?.get(p.k() as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn entry_examples() {
        assert_eq!(entry_at(2, 1).unwrap(), BigInt::from(1));
        assert_eq!(entry_at(0, 0).unwrap(), BigInt::from(0));
        assert_eq!(entry_at(6, 3).unwrap(), BigInt::from(4));
    }

    #[test]
    fn coordinate_errors() {
        assert_eq!(
            GridPoint::new(3, 4),
            Err(TriangleError::OutOfRange { r: 3, k: 4 })
        );
        assert!(GridPoint::new(3, -1).is_err());
        assert!(GridPoint::new(-1, 0).is_err());
        assert!(entry_at(5, 6).is_err());
    }

    #[test]
    fn rows() {
        assert_eq!(row(0), ints(&[0]));
        assert_eq!(row(2), ints(&[0, 1, 0]));
        assert_eq!(row(6), ints(&[0, 5, 3, 4, 3, 5, 0]));
        assert_eq!(row(7), ints(&[0, 8, 5, 6, 6, 5, 8, 0]));
    }

    #[test]
    fn diagonals() {
        assert_eq!(diagonal(3, 9), ints(&[0, 2, 2, 4, 6, 10, 16, 26, 42]));
        assert_eq!(diagonal(1, 5), ints(&[0, 1, 1, 2, 3]));
        assert_eq!(diagonal(4, 4), ints(&[0, 3, 3, 6]));
        assert!(diagonal(4, 0).is_empty());
        for t in 0..9 {
            assert_eq!(diagonal(3, 9)[t as usize], entry_at(3 + t, t).unwrap());
        }
    }

    #[test]
    fn symmetry_and_both_recursions() {
        for r in 0..=300i64 {
            let values = row(r as u32);
            assert_eq!(values.len() as i64, r + 1);
            for k in 0..=r {
                assert_eq!(values[k as usize], values[(r - k) as usize]);
            }
        }
        for r in 2..=120i64 {
            for k in 0..=r {
                let h = entry_at(r, k).unwrap();
                if k <= r - 2 {
                    assert_eq!(h, entry_at(r - 1, k).unwrap() + entry_at(r - 2, k).unwrap());
                }
                if k >= 2 {
                    assert_eq!(
                        h,
                        entry_at(r - 1, k - 1).unwrap() + entry_at(r - 2, k - 2).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn window_accessors() {
        let w = TriangleWindow::new(3, 6);
        assert_eq!(w.rows.len(), 4);
        assert_eq!(w.row(6).unwrap(), ints(&[0, 5, 3, 4, 3, 5, 0]).as_slice());
        assert!(w.row(2).is_none());
        assert_eq!(
            w.value(GridPoint::new(4, 2).unwrap()),
            Some(&BigInt::from(1))
        );
    }

    #[test]
    fn grid_point_serde_checks_range() {
        let p: GridPoint = serde_json::from_str("[5,2]").unwrap();
        assert_eq!((p.r(), p.k()), (5, 2));
        assert!(serde_json::from_str::<GridPoint>("[2,5]").is_err());
    }
}
