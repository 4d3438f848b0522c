//! Command-line front end: checking permutations, realising snakes as
//! Morse polynomials, extracting snakes from polynomials, valuation
//! reports, enumeration campaigns, plot data, and tree export.

mod commands;
mod render;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit codes: 0 success, 2 parse/usage, 3 domain error, 4 violated
/// internal contract (formula/oracle mismatch; should never fire).
pub enum CliError {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Internal(m) => m,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    #[default]
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum TreeKind {
    #[default]
    Separating,
    Contact,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum CsvFormat {
    #[default]
    Csv,
}

#[derive(Parser)]
#[command(
    name = "snakeforge",
    version,
    about = "Exact construction of Morse polynomials with prescribed Arnold snakes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report whether a permutation is a snake, separable, how it ends,
    /// and its canonical separating tree
    Check {
        /// Permutation in one-line notation, e.g. "4 5 1 3 2"
        perm: String,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Realise a separable snake as a Morse polynomial with a rational
    /// witness, fully verified
    Realize {
        /// Permutation in one-line notation; must be a separable snake
        /// ending on a descent
        perm: String,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Extract the Arnold snake of a Morse polynomial over the rationals
    #[command(name = "snake-of")]
    SnakeOf {
        /// Polynomial in x or y, e.g. "y^5 - 35/2*y^4 + 105*y^3 - 265*y^2 + 280*y"
        poly: String,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Per-area valuation report for a sorted root family: contact-tree
    /// formula and integration oracle side by side
    Valuation {
        /// Root polynomials in x, sorted by their germs at 0+, e.g.
        /// "0" "x^4" "x^3 + x^4" ...
        #[arg(required = true)]
        roots: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Census per size: permutations, snakes, separable permutations,
    /// separable snakes with descending orientation; optionally verify
    /// each candidate end to end
    Enumerate {
        /// Largest size to enumerate (at most 10)
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Realise and verify every separable descending snake
        #[arg(long)]
        verify: bool,
        /// With --verify, check only this many seeded samples per size
        /// (0 = all)
        #[arg(long, default_value_t = 0)]
        sample: usize,
        /// Seed for the sampled verification campaign
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads for the verification (0 = rayon default)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Sample a polynomial (or the realisation of a permutation) into CSV
    /// rows for external plotting
    #[command(name = "plot-data")]
    PlotData {
        /// Polynomial to sample
        #[arg(long, conflicts_with = "perm")]
        poly: Option<String>,
        /// Permutation to realise; its Morse polynomial at the witness is
        /// sampled
        #[arg(long)]
        perm: Option<String>,
        /// Number of sample rows
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Significant digits in the decimal columns
        #[arg(long, default_value_t = 12)]
        precision: usize,
        /// Sample range LO:HI (rationals); default covers the critical
        /// points with a margin
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        /// Output format (only CSV exists for plot data)
        #[arg(long, value_enum, default_value_t)]
        format: CsvFormat,
    },
    /// Export the separating or contact tree of a permutation
    #[command(name = "export-tree")]
    ExportTree {
        /// Permutation in one-line notation
        perm: String,
        #[arg(long, value_enum, default_value_t)]
        kind: TreeKind,
        #[arg(long, value_enum, default_value_t)]
        format: TreeFormat,
    },
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { perm, format } => commands::check(&perm, format),
        Command::Realize { perm, format } => commands::realize(&perm, format),
        Command::SnakeOf { poly, format } => commands::snake_of(&poly, format),
        Command::Valuation { roots, format } => commands::valuation(&roots, format),
        Command::Enumerate {
            max_n,
            verify,
            sample,
            seed,
            jobs,
            format,
        } => commands::enumerate(max_n, verify, sample, seed, jobs, format),
        Command::PlotData {
            poly,
            perm,
            samples,
            precision,
            range,
            format: CsvFormat::Csv,
        } => commands::plot_data(
            poly.as_deref(),
            perm.as_deref(),
            samples,
            precision,
            range.as_deref(),
        ),
        Command::ExportTree { perm, kind, format } => commands::export_tree(&perm, kind, format),
    };
    if let Err(e) = result {
        eprintln!("error: {}", e.message());
        std::process::exit(e.exit_code());
    }
}
