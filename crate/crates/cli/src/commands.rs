use std::io::{self, Write};
use std::time::Instant;

use binpart::{
    oracle::GrayOracle, ranking, BinaryPartition, CountTable, Direction, Error, GrayCursor,
};
use num_bigint::BigUint;
use serde_json::json;

use crate::output::{big_number, Sink};

/// Stepping keeps digits in machine words, so sizes are capped here.
pub const MAX_STEP_SIZE: u64 = 1 << 62;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
    Failed(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Domain(e) if e.is_syntax() => 1,
            CliError::Domain(_) | CliError::Failed(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Failed(msg) => f.write_str(msg),
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn table() -> &'static CountTable {
    CountTable::global()
}

fn parse_partition(text: &str) -> Result<BinaryPartition> {
    Ok(BinaryPartition::parse(text)?)
}

fn parse_index(text: &str) -> Result<BigUint> {
    let text = text.trim();
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CliError::Usage(format!(
            "`{text}` is not a nonnegative decimal integer"
        )));
    }
    Ok(BigUint::parse_bytes(text.as_bytes(), 10).expect("checked digits"))
}

pub fn count<W: Write>(out: &mut Sink<W>, n: u64) -> Result<()> {
    let b = table().bpc(n)?;
    out.record(&b, json!({ "n": n, "count": big_number(&b) }))?;
    Ok(())
}

pub fn list<W: Write>(out: &mut Sink<W>, n: u64, pad: bool) -> Result<()> {
    for term in GrayOracle::new().gray_b_n(n) {
        let text = if pad {
            term.to_string()
        } else {
            term.even_part.to_string()
        };
        out.partition(None, &text)?;
    }
    Ok(())
}

pub fn seq<W: Write>(out: &mut Sink<W>, limit: u64) -> Result<()> {
    let mut cursor = GrayCursor::start();
    for i in 0..limit {
        if i > 0 {
            cursor.step(Direction::Forward)?;
        }
        out.partition(cursor.index(), &cursor.partition().to_string())?;
    }
    Ok(())
}

fn check_step_size(p: &BinaryPartition) -> Result<()> {
    match p.size_u64() {
        Some(size) if size <= MAX_STEP_SIZE => Ok(()),
        _ => Err(Error::TooLarge(format!("stepping from {p} (sizes above 2^62)")).into()),
    }
}

fn stepping_cursor(p: &BinaryPartition) -> Result<GrayCursor> {
    check_step_size(p)?;
    let cursor = GrayCursor::new(p);
    // Partitions too large to rank still step; they just have no index.
    Ok(match ranking::rank(table(), p) {
        Ok(k) => cursor.with_index(k),
        Err(Error::TooLarge(_)) => cursor,
        Err(e) => return Err(e.into()),
    })
}

pub fn step<W: Write>(
    out: &mut Sink<W>,
    partition: &str,
    steps: u64,
    trace: bool,
    dir: Direction,
) -> Result<()> {
    let start = parse_partition(partition)?;
    let mut cursor = stepping_cursor(&start)?;
    for _ in 0..steps {
        let before = trace.then(|| {
            (
                cursor.index().cloned(),
                cursor.partition(),
                cursor.epsilon(),
            )
        });
        let mv = cursor.step(dir);
        if let Some((index, p, eps)) = before {
            if let Ok(mv) = &mv {
                out.trace(index.as_ref(), &p.to_string(), eps, Some(mv))?;
            }
        }
        mv?;
    }
    let end = cursor.partition().to_string();
    if trace {
        out.trace(cursor.index(), &end, cursor.epsilon(), None)?;
    } else {
        out.partition(cursor.index(), &end)?;
    }
    Ok(())
}

pub fn rank<W: Write>(out: &mut Sink<W>, partition: &str) -> Result<()> {
    let p = parse_partition(partition)?;
    let k = ranking::rank(table(), &p)?;
    out.record(
        &k,
        json!({ "index": big_number(&k), "partition": p.to_string() }),
    )?;
    Ok(())
}

pub fn unrank<W: Write>(out: &mut Sink<W>, k: &str) -> Result<()> {
    let k = parse_index(k)?;
    let p = ranking::unrank(table(), &k)?;
    out.partition(Some(&k), &p.to_string())?;
    Ok(())
}

pub fn trail<W: Write>(out: &mut Sink<W>, partition: &str) -> Result<()> {
    let p = parse_partition(partition)?;
    let t = ranking::trail(&p)?;
    out.record(&t, json!({ "partition": p.to_string(), "trail": t.taus() }))?;
    Ok(())
}

pub fn bench<W: Write>(out: &mut Sink<W>, steps: u64, start: Option<&str>) -> Result<()> {
    let start = match start {
        Some(text) => parse_partition(text)?,
        None => BinaryPartition::empty(),
    };
    check_step_size(&start)?;
    let mut cursor = GrayCursor::new(&start);
    let mut max_touches = 0;
    let timer = Instant::now();
    for _ in 0..steps {
        cursor.step(Direction::Forward)?;
        max_touches = max_touches.max(cursor.last_step_touches());
    }
    let secs = timer.elapsed().as_secs_f64();
    let rate = if secs > 0.0 {
        steps as f64 / secs
    } else {
        f64::INFINITY
    };
    let end = cursor.partition();
    let size = end.size();
    out.record(
        format!(
            "steps {steps} seconds {secs:.6} steps_per_second {rate:.0} max_touches {max_touches} final_size {size}"
        ),
        json!({
            "steps": steps,
            "seconds": secs,
            "steps_per_second": rate,
            "max_touches": max_touches,
            "final_size": big_number(&size),
        }),
    )?;
    Ok(())
}
