use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Construct, check and classify finite quadratical quasigroups.
///
/// Tables are read from files in the table text format or named with
/// `@fixture` (q1 q2 q3 q4 q1-dual q3-dual q4-dual z3-1..z3-6 t5-1..t5-3).
#[derive(Debug, Parser)]
#[command(name = "quadlat", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Worker threads for parallel commands (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solutions a of 2a^2 - 2a + 1 = 0 (mod m).
    Solve {
        #[arg(short)]
        m: u64,
    },
    /// Print a Cayley table, generated from (m, a[, b, c]) or read from input.
    Table {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Out,
    },
    /// Check identities against a table.
    Check {
        #[command(flatten)]
        source: Source,
        /// Check every known identity and law.
        #[arg(long, conflicts_with = "identity")]
        all: bool,
        /// Check only the named identity (repeatable).
        #[arg(long, value_name = "NAME")]
        identity: Vec<String>,
    },
    /// Translatability index of a linear form on Z_m.
    K {
        #[arg(short)]
        m: u64,
        #[arg(short, allow_hyphen_values = true)]
        a: i64,
        /// Second coefficient; without it the quadratical form ax + (1-a)y is assumed.
        #[arg(short, allow_hyphen_values = true)]
        b: Option<i64>,
        #[arg(short, allow_hyphen_values = true, requires = "b")]
        c: Option<i64>,
    },
    /// Search all orderings for a translatable one, or test a given ordering.
    ///
    /// Orders above 10 are refused unless QUADLAT_MAX_ORDER_SEARCH raises the cap.
    OrderSearch {
        #[command(flatten)]
        source: Source,
        /// Test this ordering (element names, comma separated) instead of searching.
        #[arg(long, value_delimiter = ',', value_name = "X,Y,...")]
        ordering: Option<Vec<String>>,
    },
    /// Build the H-chain H1..Hn from a base pair.
    Hchain {
        #[command(flatten)]
        source: Source,
        /// Base elements a and b (labels or indices).
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        base: Vec<String>,
        /// Number of blocks (default: (order - 1) / 4).
        #[arg(short)]
        n: Option<usize>,
    },
    /// Find a base pair whose H-chain exhausts the table.
    DetectForm {
        #[command(flatten)]
        source: Source,
        /// Write the table in canonical Qn labelling to this file.
        #[arg(long, value_name = "FILE")]
        canonical: Option<PathBuf>,
    },
    /// Complete or refute the Qn table for one value of aba·a.
    CompleteQn {
        #[arg(short)]
        n: usize,
        /// Which block element equals aba·a: 1..4, or written as n1..n4.
        #[arg(long)]
        choice: String,
        /// Case-split depth once saturation stalls.
        #[arg(long, default_value_t = 0)]
        split_depth: usize,
        /// Label the first block a ab ba b.
        #[arg(long)]
        seed_labels: bool,
        /// Write the deduction trace to this file.
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Refute the existence of a quadratical quasigroup of form Q6.
    RefuteQ6 {
        /// Write one trace file per case into this directory.
        #[arg(long, value_name = "DIR")]
        trace_dir: Option<PathBuf>,
        #[arg(long)]
        seed_labels: bool,
    },
    /// The dual table x*y = y·x.
    Dual {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Out,
    },
    /// Direct product of two tables.
    Product {
        left: String,
        right: String,
        #[command(flatten)]
        out: Out,
    },
    /// Search for an isomorphism between two tables.
    Iso { left: String, right: String },
    /// All forms with m <= max-m and k < max-k, sorted by (k, m, a).
    Scan {
        #[arg(long)]
        max_m: u64,
        #[arg(long)]
        max_k: u64,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// One form per dual pair (a < b) with m <= max-m, sorted by (m, a).
    Classify {
        #[arg(long)]
        max_m: u64,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

/// Where a table comes from.
#[derive(Debug, Args)]
pub struct Source {
    /// Table file, or @fixture.
    #[arg(short, long, value_name = "FILE", conflicts_with = "m")]
    pub input: Option<String>,
    /// Generate x·y = ax + by + c (mod m).
    #[arg(short, requires = "a")]
    pub m: Option<u64>,
    #[arg(short, allow_hyphen_values = true, requires = "m")]
    pub a: Option<i64>,
    /// Defaults to 1 - a.
    #[arg(short, allow_hyphen_values = true, requires = "m")]
    pub b: Option<i64>,
    #[arg(short, allow_hyphen_values = true, requires = "m")]
    pub c: Option<i64>,
}

#[derive(Debug, Args)]
pub struct Out {
    /// Write the result here instead of standard output.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub out: Out,
    /// Persist progress here and resume from it.
    #[arg(long, value_name = "FILE")]
    pub checkpoint: Option<PathBuf>,
    /// Rows file backing the checkpoint (default: <checkpoint>.rows.csv).
    #[arg(long, value_name = "FILE", requires = "checkpoint")]
    pub rows: Option<PathBuf>,
    /// Stop once the checkpoint reaches this modulus.
    #[arg(long, value_name = "M", requires = "checkpoint")]
    pub stop_after: Option<u64>,
    /// Emit only rows computed by this run.
    #[arg(long, requires = "checkpoint")]
    pub incremental: bool,
    /// Compare with the bundled transcription and write the differences here.
    #[arg(long, value_name = "FILE")]
    pub discrepancies: Option<PathBuf>,
}
