//! Exact Fibonacci and Lucas numbers over the whole integer line.
//!
//! Negative indices follow the negafibonacci rule `F(-n) = (-1)^(n+1) F(n)`
//! and `L(-n) = (-1)^n L(n)`, so callers never need to special-case an index
//! that drifts below zero.
//!
//! Single queries go through a process-wide memo of the first
//! [`CACHE_LIMIT`] values; indices past the memo use fast doubling.
//! [`FibTable`] is a private, append-only table for workers that sweep dense
//! index ranges.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision signed integer. Every value in the crate is one of these.
pub type ExactInteger = BigInt;

/// Signed Fibonacci/Lucas subscript.
pub type FibIndex = i64;

/// Largest nonnegative index kept in the shared memo.
pub const CACHE_LIMIT: u64 = 4096;

fn shared() -> &'static RwLock<Vec<BigInt>> {
    static MEMO: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(vec![BigInt::zero(), BigInt::one()]))
}

/// `F(n)` for any signed `n`.
pub fn fib(n: FibIndex) -> ExactInteger {
    let m = n.unsigned_abs();
    let value = fib_unsigned(m);
    // F(-m) = (-1)^(m+1) F(m): negative exactly when m is even.
    if n < 0 && m.is_multiple_of(2) {
        -value
    } else {
        value
    }
}

/// `L(n)` for any signed `n`.
pub fn lucas(n: FibIndex) -> ExactInteger {
    let m = n.unsigned_abs();
    let value = if m == 0 {
        BigInt::from(2)
    } else {
        // L(m) = F(m-1) + F(m+1) = 2F(m+1) - F(m)
        let (f, g) = fib_pair(m);
        (g << 1) - f
    };
    if n < 0 && m % 2 == 1 {
        -value
    } else {
        value
    }
}

fn fib_unsigned(m: u64) -> BigInt {
    if m > CACHE_LIMIT {
        return fast_doubling(m).0;
    }
    let idx = m as usize;
    {
        let memo = shared().read().expect("fibonacci memo poisoned");
        if let Some(v) = memo.get(idx) {
            return v.clone();
        }
    }
    let mut memo = shared().write().expect("fibonacci memo poisoned");
    while memo.len() <= idx {
        let len = memo.len();
        let next = &memo[len - 1] + &memo[len - 2];
        memo.push(next);
    }
    memo[idx].clone()
}

/// `(F(m), F(m+1))`.
fn fib_pair(m: u64) -> (BigInt, BigInt) {
    if m < CACHE_LIMIT {
        (fib_unsigned(m), fib_unsigned(m + 1))
    } else {
        fast_doubling(m)
    }
}

/// Fast doubling: returns `(F(n), F(n+1))`.
///
/// Uses `F(2k) = F(k) (2F(k+1) - F(k))` and `F(2k+1) = F(k)^2 + F(k+1)^2`,
/// walking the bits of `n` from the most significant end.
pub fn fast_doubling(n: u64) -> (ExactInteger, ExactInteger) {
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    if n == 0 {
        return (a, b);
    }
    let bits = u64::BITS - n.leading_zeros();
    for shift in (0..bits).rev() {
        let c = &a * ((&b << 1) - &a);
        let d = &a * &a + &b * &b;
        if (n >> shift) & 1 == 0 {
            a = c;
            b = d;
        } else {
            b = &c + &d;
            a = d;
        }
    }
    (a, b)
}

/// Ascending Fibonacci table for dense sweeps.
///
/// Growth is append-only; an entry, once stored, never changes. Each worker
/// owns its table, so no locking is involved.
#[derive(Debug, Clone)]
pub struct FibTable {
    values: Vec<BigInt>,
}

impl Default for FibTable {
    fn default() -> Self {
        Self::new()
    }
}

impl FibTable {
    pub fn new() -> Self {
        Self {
            values: vec![BigInt::zero(), BigInt::one()],
        }
    }

    /// Table pre-filled through index `max`.
    pub fn with_capacity(max: u64) -> Self {
        let mut table = Self::new();
        table.grow_to(max);
        table
    }

    fn grow_to(&mut self, m: u64) {
        let idx = m as usize;
        self.values
            .reserve(idx.saturating_sub(self.values.len()) + 1);
        while self.values.len() <= idx {
            let len = self.values.len();
            let next = &self.values[len - 1] + &self.values[len - 2];
            self.values.push(next);
        }
    }

    /// Highest index currently stored.
    pub fn max_index(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&mut self, n: FibIndex) -> ExactInteger {
        let m = n.unsigned_abs();
        self.grow_to(m);
        let v = self.values[m as usize].clone();
        if n < 0 && m.is_multiple_of(2) {
            -v
        } else {
            v
        }
    }
}
