//! Random access into `B`: the bijection `k ↔ B_k`.
//!
//! Both directions go through the trail `τ_i = |⌊P/2^i⌋|`, the sizes seen
//! while repeatedly halving every part and dropping the 1s. Terms of size
//! `n` fill the index block `(b(n-2), b(n)]`, and the term at offset `ℓ` of
//! that block halves to `B_ℓ`, counting from the end of the block when
//! `n ≡ 2 (mod 4)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::counting::CountTable;
use crate::error::{Error, Result};
use crate::partition::BinaryPartition;

/// Sizes `τ_0 > τ_1 > ...` under repeated halve-and-drop, trailing zeros
/// omitted. Empty for the empty partition.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Trail(Vec<u64>);

impl Trail {
    /// Validates a trail. Trailing zeros are stripped.
    pub fn new(mut taus: Vec<u64>) -> Result<Self> {
        while taus.last() == Some(&0) {
            taus.pop();
        }
        for (i, &t) in taus.iter().enumerate() {
            if t % 2 == 1 {
                return Err(Error::InvalidTrail(format!("entry {i} is odd ({t})")));
            }
            if i > 0 && t > taus[i - 1] / 2 {
                return Err(Error::InvalidTrail(format!(
                    "entry {i} ({t}) exceeds half of the previous entry ({})",
                    taus[i - 1]
                )));
            }
        }
        Ok(Self(taus))
    }

    pub fn taus(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Trail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Trail {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Self::default());
        }
        let taus = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Malformed(t.trim().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(taus)
    }
}

/// The trail of `p`.
pub fn trail(p: &BinaryPartition) -> Result<Trail> {
    let size = p
        .size_u64()
        .ok_or_else(|| Error::TooLarge(format!("size of {p}")))?;
    let mut taus = Vec::new();
    let mut current = p.clone();
    let mut tau = size;
    while tau > 0 {
        taus.push(tau);
        // Halving drops the 2s, which contribute 2 each, and halves the rest.
        tau = (tau - 2 * current.digit(1)) / 2;
        current = current.floor_halve();
    }
    Ok(Trail(taus))
}

/// Rebuilds the partition: there are `τ_(i-1)/2 - τ_i` parts of size `2^i`.
pub fn partition_from_trail(t: &Trail) -> BinaryPartition {
    let taus = t.taus();
    let digits = (0..taus.len()).rev().filter_map(|i| {
        let next = taus.get(i + 1).copied().unwrap_or(0);
        let d = taus[i] / 2 - next;
        (d > 0).then_some((i as u32 + 1, d))
    });
    BinaryPartition::from_sorted_unchecked(digits.collect())
}

/// 1-based position of `p` in `B`.
pub fn rank(table: &CountTable, p: &BinaryPartition) -> Result<BigUint> {
    let t = trail(p)?;
    let mut k = BigUint::one();
    for &tau in t.taus().iter().rev() {
        k = if tau % 4 == 0 {
            table.bpc(tau - 2)? + k
        } else {
            table.bpc(tau)? + 1u32 - k
        };
    }
    Ok(k)
}

/// The trail of `B_k`.
pub fn unrank_trail(table: &CountTable, k: &BigUint) -> Result<Trail> {
    let mut k = k.clone();
    let mut taus = Vec::new();
    loop {
        let n = table.size_of_index(&k)?;
        if n == 0 {
            break;
        }
        taus.push(n);
        k = if n % 4 == 0 {
            k - table.bpc(n - 2)?
        } else {
            table.bpc(n)? + 1u32 - k
        };
    }
    Ok(Trail(taus))
}

/// `B_k`, for `k >= 1`.
pub fn unrank(table: &CountTable, k: &BigUint) -> Result<BinaryPartition> {
    Ok(partition_from_trail(&unrank_trail(table, k)?))
}
