//! Conjugate gradient, the circulant preconditioner and the iteration
//! benchmark.

mod bench;
mod cg;
mod operator;
mod strang;

pub use bench::{
    bench_iterations, project_out_constant, rhs_sequence, smooth_rhs, write_bench_csv, BenchConfig, BenchRow, GuessMode,
    SolverKind,
};
pub use cg::{cg, pcg, SolveReport, SolverConfig, StoppingRule};
pub use operator::{DenseOperator, Diagonal, Identity, LinearOperator, Preconditioner};
pub use strang::{corrected_zero_block, StrangPreconditioner, StrangStats};
