//! The Gray sequence of binary partitions.
//!
//! Every even binary partition appears exactly once in the infinite sequence
//! `B = B_1, B_2, ...`, starting `∅, 2, 22, 4, 42, 222, ...`, and consecutive
//! terms differ by one move `2^k + 2^k ↔ 2^(k+1)` (a new 2 may appear from,
//! or vanish into, implicit 1s). The crate provides:
//!
//! * [`partition`]: the digit-map representation and its text form;
//! * [`counting`]: the binary partition function `b(n)`;
//! * [`stepper`]: constant-time successor and predecessor;
//! * [`ranking`]: `k ↔ B_k` in both directions;
//! * [`oracle`]: a slow reference construction used for checking.

pub mod counting;
pub mod error;
pub mod oracle;
pub mod partition;
pub mod ranking;
pub mod stepper;

pub use counting::{bpc, size_of_index, CountTable};
pub use error::{Error, Result};
pub use oracle::GrayOracle;
pub use partition::{BinaryPartition, Digit, Level, PaddedPartition, Style};
pub use ranking::{partition_from_trail, rank, trail, unrank, unrank_trail, Trail};
pub use stepper::{predecessor, successor, Action, Direction, GrayCursor, Move, Rule, Sign};
