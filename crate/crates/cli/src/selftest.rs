//! Invariant checks against the brute-force oracle, at a chosen scale.

use std::collections::BTreeSet;
use std::io::Write;

use binpart::oracle::{self, GrayOracle};
use binpart::stepper::epsilon_of;
use binpart::{ranking, BinaryPartition, CountTable, Direction, GrayCursor, PaddedPartition};
use num_bigint::BigUint;
use serde_json::json;

use crate::commands::CliError;
use crate::output::Sink;

type Check = Result<String, String>;

pub fn run<W: Write>(out: &mut Sink<W>, max_n: u64) -> Result<(), CliError> {
    let table = CountTable::global();
    let oracle = GrayOracle::new();
    let checks = [
        ("counting", counting(table, max_n)),
        ("gray-sequences", sequences(&oracle, table, max_n)),
        ("stepper", stepper(&oracle, table, max_n)),
        ("ranking", ranking_round_trip(table, max_n)),
        ("closed-forms", closed_forms(&oracle, max_n)),
    ];

    let mut failures = 0;
    for (name, result) in checks {
        let (pass, detail) = match &result {
            Ok(d) => (true, d.as_str()),
            Err(d) => (false, d.as_str()),
        };
        failures += usize::from(!pass);
        let status = if pass { "PASS" } else { "FAIL" };
        out.record(
            format!("{status} {name}: {detail}"),
            json!({ "check": name, "pass": pass, "detail": detail }),
        )?;
    }
    if failures > 0 {
        return Err(CliError::Failed(format!(
            "{failures} self-test check(s) failed"
        )));
    }
    Ok(())
}

fn b(table: &CountTable, n: u64) -> Result<BigUint, String> {
    table.bpc(n).map_err(|e| e.to_string())
}

fn counting(table: &CountTable, max_n: u64) -> Check {
    for n in 0..=max_n {
        let brute = oracle::count_all(n);
        if b(table, n)? != BigUint::from(brute) {
            return Err(format!("b({n}) disagrees with enumeration ({brute})"));
        }
    }
    Ok(format!("b(n) matches enumeration for n <= {max_n}"))
}

fn sequences(oracle: &GrayOracle, table: &CountTable, max_n: u64) -> Check {
    for n in (0..=max_n).step_by(2) {
        let seq = oracle.gray_b_n(n);
        if BigUint::from(seq.len()) != b(table, n)? {
            return Err(format!("B({n}) has {} terms", seq.len()));
        }
        let as_set: BTreeSet<&PaddedPartition> = seq.iter().collect();
        let all = oracle::enumerate_all(n);
        if as_set != all.iter().collect() {
            return Err(format!("B({n}) is not the set of binary partitions of {n}"));
        }
        for (i, w) in seq.windows(2).enumerate() {
            if !matches!(
                oracle::transition(&w[0], &w[1]),
                Some(oracle::Transition::Merge(_) | oracle::Transition::Split(_))
            ) {
                return Err(format!(
                    "B({n}) terms {i} and {} are not one move apart",
                    i + 1
                ));
            }
        }
        let with_ones = seq.iter().take_while(|q| q.ones > 0).count();
        if seq[with_ones..].iter().any(|q| q.ones > 0) {
            return Err(format!("B({n}): terms with 1s are not a prefix"));
        }
        if let (true, Some(after)) = (with_ones > 0, seq.get(with_ones)) {
            if after.even_part.digit(1) == 0 {
                return Err(format!("B({n}): first term without 1s has no 2"));
            }
        }
    }
    let limit = b(table, max_n)?;
    let limit = usize::try_from(&limit).map_err(|e| e.to_string())?;
    let prefix = oracle.gray_prefix(limit);
    for n in (2..=max_n).step_by(2) {
        let lo = usize::try_from(b(table, n - 2)?).unwrap();
        let hi = usize::try_from(b(table, n)?).unwrap();
        let in_block = prefix
            .iter()
            .enumerate()
            .filter(|(_, p)| p.size_u64() == Some(n));
        let indices: Vec<usize> = in_block.map(|(i, _)| i + 1).collect();
        if indices != (lo + 1..=hi).collect::<Vec<_>>() {
            return Err(format!("size-{n} terms do not fill ({lo}, {hi}]"));
        }
    }
    Ok(format!(
        "B(n) for even n <= {max_n}: counts, sets, moves, blocks"
    ))
}

fn stepper(oracle: &GrayOracle, table: &CountTable, max_n: u64) -> Check {
    let limit = usize::try_from(b(table, max_n)?).map_err(|e| e.to_string())?;
    let prefix = oracle.gray_prefix(limit);
    let mut cursor = GrayCursor::start();
    for (i, expected) in prefix.iter().enumerate() {
        if cursor.partition() != *expected {
            return Err(format!(
                "step {i}: got {}, expected {expected}",
                cursor.partition()
            ));
        }
        if cursor.epsilon() != epsilon_of(expected) {
            return Err(format!("step {i}: stored epsilon is stale"));
        }
        if i > 0 {
            let mut back = cursor.clone();
            back.step(Direction::Backward).map_err(|e| e.to_string())?;
            if back.partition() != prefix[i - 1] {
                return Err(format!("step {i}: predecessor mismatch"));
            }
        }
        cursor.step(Direction::Forward).map_err(|e| e.to_string())?;
    }
    Ok(format!("{limit} terms match the oracle in both directions"))
}

fn ranking_round_trip(table: &CountTable, max_n: u64) -> Check {
    let mut checked = 0u64;
    for n in (0..=max_n).step_by(2) {
        for q in oracle::enumerate_all(n).into_iter().filter(|q| q.ones == 0) {
            let p: BinaryPartition = q.even_part;
            let k = ranking::rank(table, &p).map_err(|e| e.to_string())?;
            let back = ranking::unrank(table, &k).map_err(|e| e.to_string())?;
            if back != p {
                return Err(format!("unrank(rank({p})) = {back}"));
            }
            let t = ranking::trail(&p).map_err(|e| e.to_string())?;
            if ranking::partition_from_trail(&t) != p {
                return Err(format!("trail of {p} does not invert"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} even partitions of size <= {max_n} round-trip"
    ))
}

fn closed_forms(oracle: &GrayOracle, max_n: u64) -> Check {
    for n in (2..=max_n).step_by(2) {
        let seq = oracle.gray_b_n(n);
        if seq.first() != Some(&oracle::closed_q(n)) || seq.last() != Some(&oracle::closed_s(n)) {
            return Err(format!("Q({n}) or S({n}) disagrees with B({n})"));
        }
        let r = oracle::closed_r(n).map_err(|e| e.to_string())?;
        let first_full = seq.iter().find(|q| q.ones == 0).map(|q| &q.even_part);
        if first_full != Some(&r) {
            return Err(format!("R({n}) disagrees with B({n})"));
        }
    }
    Ok(format!("Q, S, R agree with B(n) for even n <= {max_n}"))
}
