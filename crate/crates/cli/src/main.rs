//! Command-line front end: classification tables, verification reports,
//! connecting words, labeling tables and static figures.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rigid_paradox::Rank;

/// Exit status when a verification report fails.
pub const EXIT_FAIL: u8 = 1;
/// Exit status for bad flags or unparsable input.
pub const EXIT_USAGE: u8 = 2;
/// Exit status when a combinatorial budget is exceeded.
pub const EXIT_BUDGET: u8 = 3;
/// Exit status for I/O failures.
pub const EXIT_IO: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "rigid-paradox", version, about = "Paradoxical decomposition of the real line")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Rank of the free group: an integer >= 2 or `omega`.
    #[arg(long = "k", global = true, default_value = "2", value_parser = parse_rank)]
    pub rank: Rank,

    /// Pair limit for rank omega (pairs 1..=J are reported).
    #[arg(long = "J", global = true)]
    pub pair_limit: Option<u32>,

    /// Inclusive window `lo..hi` of interval indices (x-range for plot-fn).
    #[arg(long, global = true, default_value = "-8..8", allow_hyphen_values = true, value_parser = parse_window)]
    pub window: Window,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Output file; written atomically. Defaults to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of `n,word,class` over the window.
    Classify,
    /// Check the partition and reassembly identities over the window.
    Verify {
        /// Also certify that no nonempty word of length <= L fixes a point.
        #[arg(long = "free-check", value_name = "L")]
        free_check: Option<usize>,
        /// Word budget for the free-action check.
        #[arg(long, default_value_t = rigid_paradox::paradox::DEFAULT_WORD_BUDGET)]
        budget: u128,
        /// Also audit the generator maps and their inverses with this many
        /// random rational samples.
        #[arg(long = "rigidity-samples", value_name = "N")]
        rigidity_samples: Option<usize>,
    },
    /// SVG graph of the map induced by a permutation.
    PlotFn {
        /// Cycle notation, e.g. "(012534)" or "(10, -3, 4)".
        #[arg(long, conflicts_with = "word", allow_hyphen_values = true)]
        perm: Option<String>,
        /// Word whose tree permutation is plotted, e.g. "x1 X2".
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// DOT graph of the labeled Cayley tree around the identity.
    PlotCayley {
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// The reduced word whose action sends m to n.
    #[command(allow_negative_numbers = true)]
    Connect {
        m: i64,
        n: i64,
        /// Apply the word to m and report whether it lands on n.
        #[arg(long)]
        check: bool,
    },
    /// CSV table `label,position,word,length` for the labels in the window,
    /// or for the first `--count` enumeration positions.
    Enumerate {
        #[arg(long)]
        count: Option<usize>,
    },
    /// SVG strip coloring each interval of the window by its class.
    LineStrip,
}

fn parse_rank(s: &str) -> Result<Rank, String> {
    Rank::from_str(s).map_err(|e| e.to_string())
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got `{s}`"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window start `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window end `{hi}`"))?;
    if lo > hi {
        return Err(format!("window start {lo} exceeds end {hi}"));
    }
    Ok(Window { lo, hi })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.global, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
