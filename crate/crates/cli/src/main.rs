//! `binpart`: count, list, step through and rank binary partitions in Gray
//! order.
//!
//! Exit status is 0 on success, 1 for usage or syntax errors and 2 for
//! well-formed input outside the domain (a part of size 1, `prev` of the
//! empty partition, index 0, ...).

mod commands;
mod output;
mod selftest;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "binpart",
    version,
    about = "Gray sequence of binary partitions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print b(n), the number of binary partitions of n.
    Count { n: u64 },
    /// Print the Gray ordering B(n) of the binary partitions of n.
    List {
        n: u64,
        /// Show the parts of size 1 explicitly.
        #[arg(long)]
        pad: bool,
    },
    /// Print B_1 ... B_K (indices are 1-based; B_1 is the empty partition).
    Seq {
        #[arg(long)]
        limit: u64,
    },
    /// Step forward from a partition.
    Next(StepArgs),
    /// Step backward from a partition.
    Prev(StepArgs),
    /// Step forward from a partition, printing a trace record per step.
    Walk(StepArgs),
    /// Print the 1-based index of a partition in B.
    Rank { partition: String },
    /// Print B_k.
    Unrank { k: String },
    /// Print the trail of a partition, comma separated.
    Trail { partition: String },
    /// Check the sequence, stepper and ranking against brute force.
    Selftest {
        #[arg(long, default_value_t = 64)]
        max_n: u64,
    },
    /// Time the loopless stepper.
    Bench {
        #[arg(long)]
        steps: u64,
        /// Starting partition (defaults to the empty partition).
        #[arg(long)]
        start: Option<String>,
    },
}

#[derive(Debug, clap::Args)]
struct StepArgs {
    /// Partition in caret (`8^2 4^1 2^2`) or plus (`8+8+4+2+2`) form; `-` is empty.
    partition: String,
    #[arg(long, default_value_t = 1)]
    steps: u64,
    /// Print `index partition epsilon rule action level` for each step.
    #[arg(long)]
    trace: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    let stdout = io::stdout();
    let mut out = output::Sink::new(stdout.lock(), cli.format);
    let result = run(cli.command, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(CliError::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            let _ = writeln!(io::stderr(), "binpart: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run<W: Write>(command: Command, out: &mut output::Sink<W>) -> Result<(), CliError> {
    use binpart::Direction::{Backward, Forward};
    use commands::*;
    match command {
        Command::Count { n } => count(out, n),
        Command::List { n, pad } => list(out, n, pad),
        Command::Seq { limit } => seq(out, limit),
        Command::Next(a) => step(out, &a.partition, a.steps, a.trace, Forward),
        Command::Prev(a) => step(out, &a.partition, a.steps, a.trace, Backward),
        Command::Walk(a) => step(out, &a.partition, a.steps, true, Forward),
        Command::Rank { partition } => rank(out, &partition),
        Command::Unrank { k } => unrank(out, &k),
        Command::Trail { partition } => trail(out, &partition),
        Command::Selftest { max_n } => selftest::run(out, max_n),
        Command::Bench { steps, start } => bench(out, steps, start.as_deref()),
    }
}
