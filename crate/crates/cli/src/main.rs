use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::Failure;

#[derive(Parser)]
#[command(name = "percoperm", version, about = "Bootstrap percolation on permutation matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyName {
    FirstScan,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Full,
    IndecFull,
    NoGrowth,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SequenceName {
    Schroeder,
    LittleSchroeder,
    Kings,
    Full,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DirectionFlag {
    /// Merge each tile with its left neighbour first.
    #[arg(long)]
    left: bool,
    /// Merge each tile with its right neighbour first.
    #[arg(long)]
    right: bool,
    /// Keep merging a new meld rightwards while it can.
    #[arg(long)]
    eager: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print every frame of a percolation run.
    Percolate {
        /// Permutation, e.g. `213` or `2 4 1 3`.
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        #[arg(long, value_enum, default_value = "first-scan")]
        policy: PolicyName,
        /// Seed for the random policy.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Explicit mutation order as `row,col` pairs, e.g. "2,2 1,2".
        #[arg(long, conflicts_with_all = ["policy", "seed"])]
        script: Option<String>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Print the bracketing of each final tile.
    Bracket {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        #[command(flatten)]
        direction: DirectionFlag,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Factor a permutation into indecomposable components.
    Comps {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Count full, full indecomposable and no-growth permutations for 1..=n.
    Count {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=percoperm::counting::MAX_N as i64))]
        n: u8,
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
        /// Split the enumeration across threads (capped by PERCOPERM_THREADS).
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Check the counting identities for every size up to n.
    Verify {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=9))]
        n: u8,
    },
    /// List a counting sequence.
    Sequence {
        #[arg(value_enum)]
        name: SequenceName,
        #[arg(value_parser = clap::value_parser!(u16).range(0..=commands::MAX_SEQUENCE as i64))]
        terms: u16,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("PERCOPERM_THREADS") else {
        return Ok(());
    };
    let threads: usize = match raw.trim().parse() {
        Ok(t) if t > 0 => t,
        _ => return Err(Failure::Usage(format!("PERCOPERM_THREADS must be a positive integer, got {raw:?}"))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Percolate { perm, policy, seed, script, format } => {
            commands::percolate(out, &perm, policy, seed, script.as_deref(), format)
        }
        Command::Bracket { perm, direction, format } => {
            let direction = if direction.left {
                commands::Merge::Left
            } else if direction.right {
                commands::Merge::Right
            } else {
                commands::Merge::Eager
            };
            commands::bracket(out, &perm, direction, format)
        }
        Command::Comps { perm, format } => commands::comps(out, &perm, format),
        Command::Count { n, which, parallel, format } => {
            configure_threads()?;
            commands::count(out, n.into(), which, parallel, format)
        }
        Command::Verify { n } => commands::verify(out, n.into()),
        Command::Sequence { name, terms, format } => commands::sequence(out, name, terms.into(), format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
