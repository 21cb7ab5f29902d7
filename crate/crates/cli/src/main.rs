mod commands;
mod document;
mod error;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;

/// Graded matrix factorizations of homogeneous polynomials and cohomology
/// counts of the hypersurfaces they define.
#[derive(Debug, Parser)]
#[command(name = "mfkit", version)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the command's artifact (factorization, table or CSV) here; for
    /// commands without one, write the report here.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Seed recorded in the report inputs. No current command draws random
    /// numbers, so output never depends on it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Matrix factorization files: validate, transform, inspect.
    #[command(subcommand)]
    Mf(MfCmd),
    /// Cohomology of twisted differentials on projective space.
    #[command(subcommand)]
    Bott(BottCmd),
    /// The rho invariant of sheaves and factorizations.
    #[command(subcommand)]
    Rho(RhoCmd),
    /// Betti/cohomology table translation and related index maps.
    #[command(subcommand)]
    Orlov(OrlovCmd),
    /// Instance checks of the rank and rho lower bounds.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Batch evaluation over parameter grids (CSV output).
    #[command(subcommand)]
    Sweep(SweepCmd),
}

/// Hypersurface of degree `d` in projective `n`-space.
#[derive(Debug, Clone, Copy, Args)]
pub struct CtxArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub d: i64,
}

#[derive(Debug, Subcommand)]
pub enum MfCmd {
    /// Check a factorization file and summarize it.
    Validate { file: PathBuf },
    /// Split off trivial summands.
    Reduce { file: PathBuf },
    /// Tensor product of two factorizations of the same degree.
    Tensor {
        left: PathBuf,
        right: PathBuf,
        /// Twist the result so that the smallest F1 degree is 0.
        #[arg(long)]
        normalize: bool,
    },
    /// Cohomological shift F[1].
    Shift { file: PathBuf },
    /// Grading twist F(t).
    Twist {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        by: i64,
    },
    /// Transpose dual.
    Dual { file: PathBuf },
    /// Betti table of a reduced factorization.
    Betti {
        file: PathBuf,
        /// Reduce first instead of rejecting unreduced input.
        #[arg(long)]
        reduce: bool,
    },
    /// Factorization of x0^2m + ... + x(k-1)^2m built from pairs.
    Fermat {
        #[arg(long)]
        pairs: u32,
        #[arg(long)]
        half_degree: u32,
        /// Q, Qi or Fp.
        #[arg(long, default_value = "Qi")]
        field: String,
        /// Prime for --field Fp.
        #[arg(long)]
        p: Option<u64>,
        /// Add one more variable with its own rank-one factorization.
        #[arg(long)]
        solo: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum BottCmd {
    /// h^q(P^n, Omega^p(l)).
    Eval {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
    },
    /// All h^q(P^n, Omega^p(l)).
    Vector {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
    },
    /// All h^q of Omega^r(r + t) restricted to a degree-d hypersurface.
    Restricted {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        t: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum RhoCmd {
    /// rho(O_X), closed form (needs a <= 0).
    StructureSheaf {
        #[command(flatten)]
        ctx: CtxArgs,
    },
    /// rho of a point of P^n.
    Point {
        #[arg(long)]
        n: i64,
        /// Check the rho bound for a point on a degree-d hypersurface.
        #[arg(long)]
        d: Option<i64>,
    },
    /// rho(O_X(j)).
    LineBundle {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
    },
    /// rank F0 + rank F1 of a reduced factorization.
    FromMf {
        file: PathBuf,
        #[arg(long)]
        reduce: bool,
    },
    /// Total of a cohomology table.
    FromTable { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum OrlovCmd {
    /// Betti table (or factorization) to cohomology table.
    Translate {
        #[command(flatten)]
        ctx: CtxArgs,
        file: PathBuf,
    },
    /// Cohomology table to Betti table.
    Invert {
        #[command(flatten)]
        ctx: CtxArgs,
        file: PathBuf,
    },
    /// Image of the residue field k(l) on X.
    Phi0 {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, allow_negative_numbers = true)]
        l: i64,
    },
    /// Generator degrees in index m of the resolution of k over S/(f).
    Shamash {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
    /// Duality (p, h) -> (n - p, n - 1 - h) on a cohomology table.
    DualTable {
        #[command(flatten)]
        ctx: CtxArgs,
        file: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCmd {
    /// rank F0 >= 2^e for a factorization file.
    Bgs {
        #[command(flatten)]
        ctx: CtxArgs,
        file: PathBuf,
    },
    /// value >= 2^(e+1) (needs a <= 0).
    Rho {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long)]
        value: u128,
    },
}

#[derive(Debug, Subcommand)]
pub enum SweepCmd {
    /// rho(O_X) against 2^(e+1) for 1 <= n <= n-max, n + 1 <= d <= d-max.
    RhoStructureSheaf {
        #[arg(long)]
        n_max: i64,
        #[arg(long)]
        d_max: i64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub type CliResult = Result<(), CliError>;
