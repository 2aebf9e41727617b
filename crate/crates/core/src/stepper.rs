//! Loopless successor and predecessor in the Gray sequence `B`.
//!
//! Write a partition as digits `d_k` (number of parts `2^k`), let `i` be the
//! largest level with `d_i > 0`, `j` the second largest (0 if none), and
//! `ε = (-1)^(d_1 + ... + d_(i-1))`. The next or previous term is decided by
//! `(d_i, d_j, ε)` alone:
//!
//! | rule | condition, forward / backward        | move                        |
//! |------|--------------------------------------|-----------------------------|
//! | a    | `d_i = 1`, `ε = -1` / `+1`           | split a largest part        |
//! | b    | other odd `d_i`, `ε = -1` / `+1`     | merge two largest parts     |
//! | c    | odd `d_i`, `d_j = 1`, `ε = +1` / `-1`| split a second-largest part |
//! | d    | other odd `d_i`, `ε = +1` / `-1`     | merge two second-largest    |
//! | e    | even `d_i`, `ε = -1` / `+1`          | split a largest part        |
//! | f    | even `d_i`, `ε = +1` / `-1`          | merge two largest parts     |
//!
//! With `j = 0` rule (c) never applies and rule (d) merges two implicit 1s
//! into a new 2. Splitting a 2 drops the resulting 1s.
//!
//! [`GrayCursor`] keeps the nonzero digits in a doubly linked list ordered by
//! descending level, so `i` and `j` are the first two nodes and every move
//! touches only nodes at or next to them. `ε` is carried along and updated
//! from the pre-step `(i, j, d_j)`:
//!
//! * (a) flips iff `j = i-1` and `d_j` is odd;
//! * (b) and (c) always flip;
//! * (d) flips unless `i = j+1`;
//! * (e) and (f) never flip.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::partition::{BinaryPartition, Digit, Level};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Rule {
    pub fn label(self) -> char {
        match self {
            Rule::A => 'a',
            Rule::B => 'b',
            Rule::C => 'c',
            Rule::D => 'd',
            Rule::E => 'e',
            Rule::F => 'f',
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Merge,
    Split,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Merge => "merge",
            Action::Split => "split",
        })
    }
}

/// One applied transition `2^k + 2^k ↔ 2^(k+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub rule: Rule,
    pub action: Action,
    /// The `k` of the pair `2^k + 2^k`.
    pub level: Level,
    /// +2 when two dropped 1s merge into a 2, -2 when a 2 splits into 1s.
    pub size_delta: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// `ε` computed from scratch: the parity of the number of parts strictly
/// between size 1 and the largest part.
pub fn epsilon_of(p: &BinaryPartition) -> Sign {
    let below: u128 = p.digits().iter().skip(1).map(|&(_, d)| d as u128).sum();
    if below.is_multiple_of(2) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node {
    level: Level,
    digit: Digit,
    /// Towards larger levels.
    prev: u32,
    /// Towards smaller levels.
    next: u32,
}

/// Distinct nodes accessed during the current step.
#[derive(Debug, Clone, Default)]
struct Touches {
    seen: [u32; 8],
    len: usize,
}

impl Touches {
    fn clear(&mut self) {
        self.len = 0;
    }

    fn touch(&mut self, idx: u32) {
        if idx == NIL || self.seen[..self.len].contains(&idx) {
            return;
        }
        if self.len < self.seen.len() {
            self.seen[self.len] = idx;
        }
        self.len += 1;
    }
}

/// Mutable position in `B` supporting constant-time steps both ways.
#[derive(Debug, Clone)]
pub struct GrayCursor {
    nodes: Vec<Node>,
    free: Vec<u32>,
    head: u32,
    negative: bool,
    index: Option<BigUint>,
    touches: Touches,
}

impl Default for GrayCursor {
    fn default() -> Self {
        Self::new(&BinaryPartition::empty())
    }
}

impl GrayCursor {
    /// A cursor positioned at `p`.
    pub fn new(p: &BinaryPartition) -> Self {
        let mut cursor = Self {
            nodes: Vec::with_capacity(p.digits().len().max(64)),
            free: Vec::new(),
            head: NIL,
            negative: epsilon_of(p) == Sign::Minus,
            index: None,
            touches: Touches::default(),
        };
        let mut last = NIL;
        for &(level, digit) in p.digits() {
            let idx = cursor.nodes.len() as u32;
            cursor.nodes.push(Node {
                level,
                digit,
                prev: last,
                next: NIL,
            });
            if last == NIL {
                cursor.head = idx;
            } else {
                cursor.nodes[last as usize].next = idx;
            }
            last = idx;
        }
        cursor
    }

    /// A cursor at `B_1`, the empty partition, tracking its index.
    pub fn start() -> Self {
        Self::default().with_index(BigUint::one())
    }

    /// Records that the current partition is `B_index`; subsequent steps
    /// keep the index up to date.
    pub fn with_index(mut self, index: BigUint) -> Self {
        self.index = Some(index);
        self
    }

    pub fn index(&self) -> Option<&BigUint> {
        self.index.as_ref()
    }

    pub fn epsilon(&self) -> Sign {
        if self.negative {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_empty(&self) -> bool {
        self.head == NIL
    }

    /// `(i, d_i)`.
    pub fn largest(&self) -> Option<(Level, Digit)> {
        self.entry(self.head)
    }

    /// `(j, d_j)`.
    pub fn second_largest(&self) -> Option<(Level, Digit)> {
        if self.head == NIL {
            return None;
        }
        self.entry(self.nodes[self.head as usize].next)
    }

    fn entry(&self, idx: u32) -> Option<(Level, Digit)> {
        (idx != NIL).then(|| {
            let n = &self.nodes[idx as usize];
            (n.level, n.digit)
        })
    }

    /// Reads out the current partition.
    pub fn partition(&self) -> BinaryPartition {
        let mut digits = Vec::new();
        let mut idx = self.head;
        while idx != NIL {
            let n = &self.nodes[idx as usize];
            digits.push((n.level, n.digit));
            idx = n.next;
        }
        BinaryPartition::from_sorted_unchecked(digits)
    }

    /// Number of distinct list nodes accessed by the last [`step`](Self::step).
    pub fn last_step_touches(&self) -> usize {
        self.touches.len
    }

    /// Which rule moves the cursor one term in `dir`.
    pub fn classify(&self, dir: Direction) -> Result<Rule> {
        let Some((_, di)) = self.largest() else {
            return match dir {
                Direction::Forward => Ok(Rule::F),
                Direction::Backward => Err(Error::StartOfSequence),
            };
        };
        let (j, dj) = self.second_largest().unwrap_or((0, 0));
        Ok(classify_digits(di, j, dj, self.negative, dir))
    }

    /// Moves one term forward or backward and reports the move applied.
    pub fn step(&mut self, dir: Direction) -> Result<Move> {
        self.touches.clear();
        let head = self.head;
        self.touches.touch(head);
        let mv = if head == NIL {
            if dir == Direction::Backward {
                return Err(Error::StartOfSequence);
            }
            // 1+1 -> 2 from nothing.
            self.head = self.alloc(1, 1, NIL, NIL);
            Move {
                rule: Rule::F,
                action: Action::Merge,
                level: 0,
                size_delta: 2,
            }
        } else {
            let (i, di) = {
                let n = &self.nodes[head as usize];
                (n.level, n.digit)
            };
            let second = self.nodes[head as usize].next;
            self.touches.touch(second);
            let (j, dj) = self.entry(second).unwrap_or((0, 0));
            let rule = classify_digits(di, j, dj, self.negative, dir);
            let mv = match rule {
                Rule::A | Rule::E => self.split(head, rule),
                Rule::B | Rule::F => self.merge(head, rule),
                Rule::C => self.split(second, rule),
                Rule::D if j == 0 => self.merge_ones(rule),
                Rule::D => self.merge(second, rule),
            };
            let flip = match rule {
                Rule::A => j >= 1 && j + 1 == i && dj % 2 == 1,
                Rule::B | Rule::C => true,
                Rule::D => i != j + 1,
                Rule::E | Rule::F => false,
            };
            self.negative ^= flip;
            mv
        };
        if let Some(k) = self.index.as_mut() {
            match dir {
                Direction::Forward => *k += 1u32,
                Direction::Backward => *k -= 1u32,
            }
        }
        Ok(mv)
    }

    fn alloc(&mut self, level: Level, digit: Digit, prev: u32, next: u32) -> u32 {
        let node = Node {
            level,
            digit,
            prev,
            next,
        };
        let idx = match self.free.pop() {
            Some(idx) => {
                self.nodes[idx as usize] = node;
                idx
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        };
        self.touches.touch(idx);
        idx
    }

    /// Inserts `(level, digit)` between adjacent nodes `prev` and `next`.
    fn insert_between(&mut self, prev: u32, next: u32, level: Level, digit: Digit) {
        let idx = self.alloc(level, digit, prev, next);
        if prev == NIL {
            self.head = idx;
        } else {
            self.touches.touch(prev);
            self.nodes[prev as usize].next = idx;
        }
        if next != NIL {
            self.touches.touch(next);
            self.nodes[next as usize].prev = idx;
        }
    }

    fn unlink(&mut self, idx: u32) {
        let Node { prev, next, .. } = self.nodes[idx as usize];
        if prev == NIL {
            self.head = next;
        } else {
            self.touches.touch(prev);
            self.nodes[prev as usize].next = next;
        }
        if next != NIL {
            self.touches.touch(next);
            self.nodes[next as usize].prev = prev;
        }
        self.free.push(idx);
    }

    /// One part `2^L` at node `x` becomes two parts `2^(L-1)`.
    fn split(&mut self, x: u32, rule: Rule) -> Move {
        self.touches.touch(x);
        let (level, next) = {
            let n = &mut self.nodes[x as usize];
            n.digit -= 1;
            (n.level, n.next)
        };
        let emptied = self.nodes[x as usize].digit == 0;
        if level == 1 {
            if emptied {
                self.unlink(x);
            }
        } else {
            self.touches.touch(next);
            if next != NIL && self.nodes[next as usize].level == level - 1 {
                self.nodes[next as usize].digit += 2;
                if emptied {
                    self.unlink(x);
                }
            } else if emptied {
                let n = &mut self.nodes[x as usize];
                n.level = level - 1;
                n.digit = 2;
            } else {
                self.insert_between(x, next, level - 1, 2);
            }
        }
        Move {
            rule,
            action: Action::Split,
            level: level - 1,
            size_delta: if level == 1 { -2 } else { 0 },
        }
    }

    /// Two parts `2^L` at node `x` become one part `2^(L+1)`.
    fn merge(&mut self, x: u32, rule: Rule) -> Move {
        self.touches.touch(x);
        let (level, prev) = {
            let n = &mut self.nodes[x as usize];
            debug_assert!(n.digit >= 2);
            n.digit -= 2;
            (n.level, n.prev)
        };
        let emptied = self.nodes[x as usize].digit == 0;
        self.touches.touch(prev);
        if prev != NIL && self.nodes[prev as usize].level == level + 1 {
            self.nodes[prev as usize].digit += 1;
            if emptied {
                self.unlink(x);
            }
        } else if emptied {
            let n = &mut self.nodes[x as usize];
            n.level = level + 1;
            n.digit = 1;
        } else {
            self.insert_between(prev, x, level + 1, 1);
        }
        Move {
            rule,
            action: Action::Merge,
            level,
            size_delta: 0,
        }
    }

    /// Two implicit 1s become a 2. Only used when the head is the sole node.
    fn merge_ones(&mut self, rule: Rule) -> Move {
        let head = self.head;
        debug_assert_eq!(self.nodes[head as usize].next, NIL);
        if self.nodes[head as usize].level == 1 {
            self.nodes[head as usize].digit += 1;
        } else {
            self.insert_between(head, NIL, 1, 1);
        }
        Move {
            rule,
            action: Action::Merge,
            level: 0,
            size_delta: 2,
        }
    }
}

fn classify_digits(di: Digit, j: Level, dj: Digit, negative: bool, dir: Direction) -> Rule {
    // The "∓" column: ε = -1 going forward, +1 going backward.
    let upper = match dir {
        Direction::Forward => negative,
        Direction::Backward => !negative,
    };
    match (di % 2 == 1, upper) {
        (true, true) if di == 1 => Rule::A,
        (true, true) => Rule::B,
        (true, false) if j >= 1 && dj == 1 => Rule::C,
        (true, false) => Rule::D,
        (false, true) => Rule::E,
        (false, false) => Rule::F,
    }
}

/// The term after `p` in `B`.
pub fn successor(p: &BinaryPartition) -> BinaryPartition {
    let mut c = GrayCursor::new(p);
    c.step(Direction::Forward)
        .expect("forward steps always exist");
    c.partition()
}

/// The term before `p` in `B`; fails for the empty partition.
pub fn predecessor(p: &BinaryPartition) -> Result<BinaryPartition> {
    let mut c = GrayCursor::new(p);
    c.step(Direction::Backward)?;
    Ok(c.partition())
}

/// `B_1, B_2, ...` produced by the loopless stepper.
pub fn sequence() -> impl Iterator<Item = BinaryPartition> {
    let mut cursor = GrayCursor::default();
    let mut first = true;
    std::iter::from_fn(move || {
        if !first {
            cursor.step(Direction::Forward).ok()?;
        }
        first = false;
        Some(cursor.partition())
    })
}
