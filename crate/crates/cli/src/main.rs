//! `leonard`: exact Leonard pair tools over JSON files.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "leonard", version, about = "Construct, recognize and classify Leonard pairs exactly")]
pub struct Cli {
    /// Parse inputs and build generators in this field: Q, GF(p) or Q(sqrt(m)).
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Exit with status 1 on negative results such as "not a Leonard pair".
    #[arg(long, global = true)]
    pub strict: bool,
    /// Seed for randomized commands; echoed in their output.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// How `tdconstruct` splits each off-diagonal product.
    #[arg(long, global = true, value_enum, default_value_t = SplitArg::Unit)]
    pub split: SplitArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitArg {
    Unit,
    Symmetric,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Example2,
    Sl2,
    Uq,
    Lattice,
}

/// A pair of matrices: two matrix files, or one file holding "a" and "a_star".
#[derive(clap::Args, Debug, Clone)]
pub struct PairArgs {
    #[arg(long)]
    pub a: Option<PathBuf>,
    #[arg(long = "astar")]
    pub astar: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["a", "astar"])]
    pub pair: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether (A, A*) is a Leonard pair and analyse it.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        /// Verify every pair file in a directory, writing NAME.report.json next to each.
        #[arg(long, conflicts_with_all = ["a", "astar", "pair"])]
        batch: Option<PathBuf>,
    },
    /// Parameter array of the canonical Leonard system on (A, A*).
    Extract {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Bidiagonal pair of a parameter array.
    Construct {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Tridiagonal/diagonal pair of a parameter array.
    Tdconstruct {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Search for the invertible intertwiner G of a parameter array.
    Gmatrix {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// The polynomials u_i and their duals, and whether they agree up to scalars.
    Polys {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Fit the Askey-Wilson relations and check the converse hypotheses.
    Awfit {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Family fingerprint of a parameter array.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Per-axiom validity report of a parameter array.
    ValidateArray {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Generate a pair from a known construction.
    Gen {
        #[arg(long, value_enum)]
        source: Source,
        /// Diameter (sl2, uq).
        #[arg(long)]
        d: Option<usize>,
        /// Deformation parameter (uq: a field element; lattice: a prime power).
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        epsilon: i64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        beta: String,
        /// Ambient dimension of the lattice.
        #[arg(long)]
        n: Option<usize>,
        /// Coordinates x,y,z of A = xe + yf + zh (sl2).
        #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
        a_coeffs: String,
        /// Coordinates x,y,z of A* (sl2).
        #[arg(long, default_value = "1,1,0", allow_hyphen_values = true)]
        astar_coeffs: String,
    },
    /// Construct, extract and diff: one array with --in, or seeded random arrays.
    Roundtrip {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        d: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.json);
            if out.negative && cli.strict {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
