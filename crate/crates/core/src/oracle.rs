//! Reference construction of the Gray sequence, by direct recursion.
//!
//! For each `n` the sequence `B(n)` of binary partitions of `n` is
//!
//! * `n` odd: `B(n-1)` with a 1 appended to every term;
//! * `n ≡ 0 (mod 4)`: `B(n-1)+1` followed by `B(n/2)` with every part doubled;
//! * `n ≡ 2 (mod 4)`: `B(n-1)+1` followed by `B(n/2)` doubled, in reverse.
//!
//! Dropping the 1s, the terms of every `B(n)` form a prefix of one infinite
//! sequence `B_1, B_2, ...` of even partitions. This module is slow and
//! memory hungry on purpose: it exists to check the loopless stepper and the
//! ranking maps, and shares no code with either.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::partition::{BinaryPartition, Level, PaddedPartition};

type Evens = Arc<Vec<BinaryPartition>>;

/// Memoized `B(n)` for even `n`, stored without their 1s.
///
/// Odd `n` reuse `B(n-1)`; the 1s are implied by the target total.
#[derive(Debug, Default)]
pub struct GrayOracle {
    memo: Mutex<HashMap<u64, Evens>>,
}

impl GrayOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Even parts of the terms of `B(n)`, in order.
    fn evens(&self, n: u64) -> Evens {
        let n = n & !1;
        let mut memo = self.memo.lock().unwrap();
        if let Some(found) = memo.get(&n) {
            return found.clone();
        }
        memo.entry(0)
            .or_insert_with(|| Arc::new(vec![BinaryPartition::empty()]));
        let mut m = 2;
        while m <= n {
            if !memo.contains_key(&m) {
                let prev = memo[&(m - 2)].clone();
                let mut seq = Vec::clone(&prev);
                seq.extend(doubled_block(&memo[&((m / 2) & !1)], m));
                memo.insert(m, Arc::new(seq));
            }
            m += 2;
        }
        memo[&n].clone()
    }

    /// The sequence `B(n)` with explicit 1s.
    pub fn gray_b_n(&self, n: u64) -> Vec<PaddedPartition> {
        self.evens(n)
            .iter()
            .map(|e| {
                let ones = n - e.size_u64().expect("oracle sizes fit in u64");
                PaddedPartition::new(e.clone(), ones)
            })
            .collect()
    }

    /// Lazily yields `B_1, B_2, ...`, one block of equal-size terms at a time.
    pub fn prefix_iter(&self) -> GrayPrefix<'_> {
        GrayPrefix {
            oracle: self,
            next_size: 0,
            block: Vec::new().into_iter(),
        }
    }

    /// `B_1 ..= B_limit`.
    pub fn gray_prefix(&self, limit: usize) -> Vec<BinaryPartition> {
        self.prefix_iter().take(limit).collect()
    }
}

/// The terms of size `n` in `B`: `B(n/2)` doubled, reversed when
/// `n ≡ 2 (mod 4)`. `half` holds the even parts of `B(n/2)`.
fn doubled_block(half: &[BinaryPartition], n: u64) -> Vec<BinaryPartition> {
    let m = n / 2;
    let mut block: Vec<_> = half
        .iter()
        .map(|e| {
            let ones = m - e.size_u64().expect("oracle sizes fit in u64");
            PaddedPartition::new(e.clone(), ones).double()
        })
        .collect();
    if n % 4 == 2 {
        block.reverse();
    }
    block
}

/// Iterator over the infinite sequence `B`, see [`GrayOracle::prefix_iter`].
#[derive(Debug)]
pub struct GrayPrefix<'a> {
    oracle: &'a GrayOracle,
    next_size: u64,
    block: std::vec::IntoIter<BinaryPartition>,
}

impl Iterator for GrayPrefix<'_> {
    type Item = BinaryPartition;

    fn next(&mut self) -> Option<BinaryPartition> {
        loop {
            if let Some(p) = self.block.next() {
                return Some(p);
            }
            let n = self.next_size;
            self.next_size += 2;
            self.block = if n == 0 {
                vec![BinaryPartition::empty()]
            } else {
                doubled_block(&self.oracle.evens(n / 2), n)
            }
            .into_iter();
        }
    }
}

/// `Q(n)`: the first term of `B(n)`, all 1s.
pub fn closed_q(n: u64) -> PaddedPartition {
    PaddedPartition::all_ones(n)
}

/// `S(n)`: the last term of `B(n)`. For even `n = 2^a * b` with `b` odd it
/// is `b` parts of size `2^a`; for odd `n` it is `S(n-1) + 1`.
pub fn closed_s(n: u64) -> PaddedPartition {
    let even = n & !1;
    let ones = n & 1;
    if even == 0 {
        return PaddedPartition::all_ones(ones);
    }
    let a = even.trailing_zeros();
    let b = even >> a;
    PaddedPartition::new(BinaryPartition::from_sorted_unchecked(vec![(a, b)]), ones)
}

/// `R(n)`: the first term of size `n` in `B`, for even `n >= 2`.
pub fn closed_r(n: u64) -> Result<BinaryPartition> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "R(n) needs an even n >= 2, got {n}"
        )));
    }
    if n.is_multiple_of(4) {
        Ok(BinaryPartition::from_sorted_unchecked(vec![(1, n / 2)]))
    } else {
        let s = closed_s(n - 2).even_part;
        Ok(
            BinaryPartition::from_digits(s.digits().iter().copied().chain([(1, 1)]))
                .expect("levels are positive"),
        )
    }
}

/// Halves every term exactly: 2s become explicit 1s.
pub fn halved_view(seq: &[BinaryPartition]) -> Vec<PaddedPartition> {
    seq.iter()
        .map(|p| PaddedPartition::new(p.floor_halve(), p.digit(1)))
        .collect()
}

/// How two partitions differ, as seen by [`transition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transition {
    /// Two parts `2^k` became one part `2^(k+1)`.
    Merge(Level),
    /// One part `2^(k+1)` became two parts `2^k`.
    Split(Level),
    /// A part of size 1 was appended.
    AddOne,
    /// A part of size 1 was removed.
    RemoveOne,
}

/// The single elementary move turning `from` into `to`, if there is one.
pub fn transition(from: &PaddedPartition, to: &PaddedPartition) -> Option<Transition> {
    let mut delta: HashMap<Level, i128> = HashMap::new();
    for (k, d) in from.all_digits() {
        *delta.entry(k).or_default() -= d as i128;
    }
    for (k, d) in to.all_digits() {
        *delta.entry(k).or_default() += d as i128;
    }
    let mut changed: Vec<(Level, i128)> = delta.into_iter().filter(|&(_, v)| v != 0).collect();
    changed.sort_unstable();
    match changed.as_slice() {
        [(0, 1)] => Some(Transition::AddOne),
        [(0, -1)] => Some(Transition::RemoveOne),
        [(k, -2), (k1, 1)] if *k1 == k + 1 => Some(Transition::Merge(*k)),
        [(k, 2), (k1, -1)] if *k1 == k + 1 => Some(Transition::Split(*k)),
        _ => None,
    }
}

/// Every binary partition of `n`, 1s included, by recursion on the largest
/// allowed part.
pub fn enumerate_all(n: u64) -> Vec<PaddedPartition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    let top = if n == 0 { 0 } else { 63 - n.leading_zeros() };
    enumerate_rec(n, top, &mut stack, &mut |digits, ones| {
        let even = BinaryPartition::from_sorted_unchecked(digits.to_vec());
        out.push(PaddedPartition::new(even, ones));
    });
    out
}

/// Number of binary partitions of `n`, by the same brute-force recursion as
/// [`enumerate_all`] without materializing them.
pub fn count_all(n: u64) -> u64 {
    let mut count = 0;
    let top = if n == 0 { 0 } else { 63 - n.leading_zeros() };
    enumerate_rec(n, top, &mut Vec::new(), &mut |_, _| count += 1);
    count
}

fn enumerate_rec<F>(rest: u64, max_level: Level, stack: &mut Vec<(Level, u64)>, emit: &mut F)
where
    F: FnMut(&[(Level, u64)], u64),
{
    if max_level == 0 {
        emit(stack, rest);
        return;
    }
    let part = 1u64 << max_level;
    for count in (0..=rest / part).rev() {
        if count > 0 {
            stack.push((max_level, count));
        }
        enumerate_rec(rest - count * part, max_level - 1, stack, emit);
        if count > 0 {
            stack.pop();
        }
    }
}
