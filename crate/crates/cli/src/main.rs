//! `glt`: spectral analysis and solver front end for block Toeplitz pressure operators.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "glt", version, about = "Block Toeplitz symbol analysis, spectra and preconditioned CG")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Polynomial degree of the DG discretization.
    #[arg(long, default_value_t = 2, global = true)]
    pub p: usize,
    /// Symbol JSON file replacing the assembled interior symbol.
    #[arg(long, global = true)]
    pub symbol: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Symbol evaluation, sampling and expansions.
    Symbol {
        #[command(subcommand)]
        cmd: SymbolCmd,
        #[command(flatten)]
        common: Common,
    },
    /// Spectral tables and figure data for the assembled operator.
    Spectra {
        #[command(subcommand)]
        cmd: SpectraCmd,
        #[command(flatten)]
        common: Common,
    },
    /// Solve one pressure system with CG or Strang-PCG.
    Solve {
        #[command(flatten)]
        args: SolveArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Average iteration counts over a drifting right-hand side.
    ///
    /// Each size solves b_t = b + t * db for t = 0..steps with |db| = drift * |b|,
    /// once with x0 = b (trivial) and once with x0 = previous solution (warm).
    Bench {
        #[command(flatten)]
        args: BenchArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Matrices and structural reports.
    Export {
        #[command(subcommand)]
        cmd: ExportCmd,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
pub enum SymbolCmd {
    /// f(theta) as JSON.
    Eval {
        /// `theta1,theta2`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.0, 0.0])]
        theta: Vec<f64>,
    },
    /// Eigenvalue functions on a grid as CSV.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Grid::Half)]
        grid: Grid,
    },
    /// Second-order expansion of det f at the origin.
    DetTaylor {
        /// Step of the finite-difference cross-check.
        #[arg(long, default_value_t = 1e-2)]
        h: f64,
    },
    /// Interval estimates [m_l, M_l], cached by symbol hash.
    Intervals {
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Grid::Half)]
        grid: Grid,
        /// Cache directory; defaults to $GLT_CACHE_DIR or ~/.cache/glt.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// The symbol as JSON.
    Export,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// `start:stop:step` or a comma list.
    #[arg(long, default_value = "10:40:5")]
    pub sizes: String,
    /// Resolution of the reference sample.
    #[arg(long, default_value_t = 500)]
    pub reference_n: usize,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Largest order handled by the dense eigensolver.
    #[arg(long, default_value_t = glt_core::spectra::SPECTRUM_GUARD)]
    pub guard: usize,
}

#[derive(Args, Debug, Clone)]
pub struct SingleArgs {
    #[arg(long, default_value_t = 40)]
    pub n: usize,
    #[arg(long, default_value_t = 500)]
    pub reference_n: usize,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, default_value_t = glt_core::spectra::SPECTRUM_GUARD)]
    pub guard: usize,
}

#[derive(Subcommand, Debug)]
pub enum SpectraCmd {
    /// Eigenvalues in [m_1, M_1] and outliers per size.
    Table1(SweepArgs),
    /// Outlier counts under each definition per size.
    Table2(SweepArgs),
    /// Rank and definiteness of the boundary part per size.
    Table3 {
        #[arg(long, default_value = "10:40:5")]
        sizes: String,
    },
    /// Sorted eigenvalues of K_N against the sorted symbol sample.
    Compare(SingleArgs),
    /// Eigenvalues with block partition and matching data.
    Blocks(SingleArgs),
    /// Summary of interval counts and outliers as JSON.
    Report(SingleArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Grid {
    Half,
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Bc {
    Dirichlet,
    Periodic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pre {
    None,
    Strang,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Stop {
    /// Relative to the initial residual.
    Initial,
    /// Relative to the right-hand side.
    Rhs,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Bc::Dirichlet)]
    pub bc: Bc,
    #[arg(long, value_enum, default_value_t = Pre::None)]
    pub pre: Pre,
    /// Solve b_1 = b + db starting from the solution for b.
    #[arg(long)]
    pub warm: bool,
    /// Include the residual history.
    #[arg(long)]
    pub history: bool,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 20000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Stop::Initial)]
    pub stop: Stop,
    /// Include wall-clock time; output is then not reproducible.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    #[arg(long, default_value = "16,24,32")]
    pub sizes: String,
    #[arg(long, value_enum, default_value_t = Bc::Dirichlet)]
    pub bc: Bc,
    #[arg(long, value_enum, default_value_t = Pre::Both)]
    pub pre: Pre,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    /// |db| / |b|.
    #[arg(long, default_value_t = 1e-2)]
    pub drift: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 20000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Stop::Rhs)]
    pub stop: Stop,
    #[arg(long)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum ExportCmd {
    /// K_N in Matrix Market format.
    Operator {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Bc::Dirichlet)]
        bc: Bc,
    },
    /// T_n(f) in Matrix Market format.
    Toeplitz {
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// C_n(f) in Matrix Market format.
    Circulant {
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Spectral blocks f(theta_r) of the circulant as JSON.
    SpectralBlocks {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Structure of the boundary part E_n as JSON.
    BoundaryReport {
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Basis, mass and H operators in exact arithmetic as JSON.
    Basis,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
