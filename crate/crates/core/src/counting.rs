//! The binary partition function `b(n)`.
//!
//! `b(0) = 1`, `b(n) = b(n-1)` for odd `n` and `b(n) = b(n-1) + b(n/2)` for
//! even `n`. Values are kept in a table that only ever grows.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest argument the table will grow to. Beyond this the table would
/// need gigabytes.
pub const MAX_TABLE_N: u64 = 1 << 22;

/// Memoized values of `b(0..=capacity)`.
///
/// Growth happens under a write lock, so readers only ever see fully
/// computed entries.
#[derive(Debug)]
pub struct CountTable {
    values: RwLock<Vec<BigUint>>,
}

impl Default for CountTable {
    fn default() -> Self {
        Self::new()
    }
}

impl CountTable {
    pub fn new() -> Self {
        Self {
            values: RwLock::new(vec![BigUint::one()]),
        }
    }

    /// A table prefilled up to `n`.
    pub fn with_capacity(n: u64) -> Result<Self> {
        let table = Self::new();
        table.ensure(n)?;
        Ok(table)
    }

    /// Process-wide shared table.
    pub fn global() -> &'static CountTable {
        static GLOBAL: OnceLock<CountTable> = OnceLock::new();
        GLOBAL.get_or_init(CountTable::new)
    }

    /// Highest `n` currently stored.
    pub fn capacity(&self) -> u64 {
        self.values.read().unwrap().len() as u64 - 1
    }

    /// Grows the table so that it holds `b(n)`.
    pub fn ensure(&self, n: u64) -> Result<()> {
        if n > MAX_TABLE_N {
            return Err(Error::TooLarge(format!("b({n})")));
        }
        if n <= self.capacity() {
            return Ok(());
        }
        let mut values = self.values.write().unwrap();
        let n = n as usize;
        let missing = n + 1 - values.len();
        values.reserve(missing);
        while values.len() <= n {
            let m = values.len();
            let next = if m % 2 == 1 {
                values[m - 1].clone()
            } else {
                &values[m - 1] + &values[m / 2]
            };
            values.push(next);
        }
        Ok(())
    }

    /// `b(n)`, the number of binary partitions of `n`.
    pub fn bpc(&self, n: u64) -> Result<BigUint> {
        self.ensure(n)?;
        Ok(self.values.read().unwrap()[n as usize].clone())
    }

    /// Smallest `n` with `k <= b(n)`. The result is always even.
    pub fn size_of_index(&self, k: &BigUint) -> Result<u64> {
        if k.is_zero() {
            return Err(Error::ZeroIndex);
        }
        if k.is_one() {
            return Ok(0);
        }
        // b(hi) >= k > b(lo), with both even.
        let mut lo = 0u64;
        let mut hi = 2u64;
        while self.bpc(hi)? < *k {
            lo = hi;
            hi = hi
                .checked_mul(2)
                .ok_or_else(|| Error::TooLarge("index".to_string()))?;
        }
        let values = self.values.read().unwrap();
        let (mut lo, mut hi) = (lo / 2, hi / 2);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if values[(2 * mid) as usize] >= *k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(2 * hi)
    }
}

/// `b(n)` from the global table.
pub fn bpc(n: u64) -> Result<BigUint> {
    CountTable::global().bpc(n)
}

/// Smallest `n` with `k <= b(n)`, from the global table.
pub fn size_of_index(k: &BigUint) -> Result<u64> {
    CountTable::global().size_of_index(k)
}
