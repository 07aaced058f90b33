//! Iteration-count benchmark over a slowly drifting right-hand side.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::dg::{BoundaryCondition, PressureOperator};
use crate::error::{Error, Result};
use crate::linalg::norm2;
use crate::structured::BlockLattice;

use super::cg::{pcg, SolverConfig, StoppingRule};
use super::operator::{Identity, Preconditioner};
use super::strang::StrangPreconditioner;

const MODES: usize = 8;

/// Smooth field sampled at the nodal points, unit norm. Modes
/// `cos(pi k1 x + a) cos(pi k2 y + b)` for `k1, k2 < 8` with Gaussian weights
/// damped by `1 / (1 + k1^2 + k2^2)`.
pub fn smooth_rhs(lattice: BlockLattice, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut modes = Vec::with_capacity(MODES * MODES);
    for k1 in 0..MODES {
        for k2 in 0..MODES {
            let a: f64 = rng.sample(StandardNormal);
            let p1 = rng.random_range(0.0..std::f64::consts::TAU);
            let p2 = rng.random_range(0.0..std::f64::consts::TAU);
            modes.push((k1 as f64, k2 as f64, a / (1.0 + (k1 * k1 + k2 * k2) as f64), p1, p2));
        }
    }
    let q = (lattice.s as f64).sqrt().round() as usize;
    let local = |a: usize| if q > 1 { a as f64 / (q - 1) as f64 } else { 0.0 };
    let mut out = vec![0.0; lattice.order()];
    for i1 in 0..lattice.n1 {
        for i2 in 0..lattice.n2 {
            for t in 0..lattice.s {
                let (a1, a2) = if q * q == lattice.s { (t / q, t % q) } else { (0, 0) };
                let x = (i1 as f64 + local(a1)) / lattice.n1 as f64;
                let y = (i2 as f64 + local(a2)) / lattice.n2 as f64;
                let pi = std::f64::consts::PI;
                out[lattice.index(i1, i2, t)] = modes
                    .iter()
                    .map(|&(k1, k2, w, p1, p2)| w * (pi * k1 * x + p1).cos() * (pi * k2 * y + p2).cos())
                    .sum();
            }
        }
    }
    let nrm = norm2(&out);
    out.iter_mut().for_each(|v| *v /= nrm);
    out
}

/// Removes the mean, i.e. the component along the constant vector.
pub fn project_out_constant(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter_mut().for_each(|x| *x -= mean);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Cg,
    Pcg,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Cg => "cg",
            SolverKind::Pcg => "pcg",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GuessMode {
    /// `x0 = b` at every step.
    Trivial,
    /// `x0` = solution of the previous step.
    Warm,
}

impl GuessMode {
    pub fn name(self) -> &'static str {
        match self {
            GuessMode::Trivial => "trivial",
            GuessMode::Warm => "warm",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub p: usize,
    pub bc: BoundaryCondition,
    pub solver: SolverConfig,
    pub solvers: Vec<SolverKind>,
    pub steps: usize,
    /// `|delta b| / |b|`.
    pub drift: f64,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            p: 2,
            bc: BoundaryCondition::Dirichlet,
            solver: SolverConfig { stopping: StoppingRule::Rhs, ..SolverConfig::default() },
            solvers: vec![SolverKind::Cg, SolverKind::Pcg],
            steps: 10,
            drift: 1e-2,
            seed: 42,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub order: usize,
    pub solver: SolverKind,
    pub guess_mode: GuessMode,
    pub avg_iters: f64,
    pub avg_ms: f64,
    pub converged_all: bool,
    pub error: Option<String>,
}

/// Right-hand sides `b_t = b + t * delta_b`, `t = 0..steps`.
pub fn rhs_sequence(lattice: BlockLattice, cfg: &BenchConfig) -> Vec<Vec<f64>> {
    let mut b = smooth_rhs(lattice, cfg.seed);
    let mut db = smooth_rhs(lattice, cfg.seed.wrapping_add(1));
    if cfg.bc == BoundaryCondition::Periodic {
        project_out_constant(&mut b);
        project_out_constant(&mut db);
    }
    let scale = cfg.drift * norm2(&b) / norm2(&db).max(f64::MIN_POSITIVE);
    (0..cfg.steps)
        .map(|t| b.iter().zip(&db).map(|(bi, di)| bi + t as f64 * scale * di).collect())
        .collect()
}

fn run_mode(
    op: &PressureOperator,
    pre: &dyn Preconditioner,
    seq: &[Vec<f64>],
    mode: GuessMode,
    cfg: &SolverConfig,
) -> Result<(f64, f64, bool)> {
    let mut prev: Option<Vec<f64>> = None;
    let (mut iters, mut ms, mut all) = (0usize, 0.0, true);
    for b in seq {
        let x0 = match (mode, &prev) {
            (GuessMode::Warm, Some(x)) => x.clone(),
            _ => b.clone(),
        };
        let (x, rep) = pcg(op, pre, b, &x0, cfg)?;
        iters += rep.iterations;
        ms += rep.wall_time_ms.unwrap_or(0.0);
        all &= rep.converged;
        prev = Some(x);
    }
    let k = seq.len().max(1) as f64;
    Ok((iters as f64 / k, ms / k, all))
}

pub fn bench_iterations(sizes: &[usize], cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    if sizes.is_empty() {
        return Err(Error::InvalidArgument("empty size list".into()));
    }
    let mut rows = Vec::new();
    for &n in sizes {
        let failed = |msg: String, solver, guess_mode, order| BenchRow {
            n,
            order,
            solver,
            guess_mode,
            avg_iters: f64::NAN,
            avg_ms: f64::NAN,
            converged_all: false,
            error: Some(msg),
        };
        let op = match PressureOperator::dg(cfg.p, n, n, cfg.bc) {
            Ok(op) => op,
            Err(e) => {
                for &s in &cfg.solvers {
                    for m in [GuessMode::Trivial, GuessMode::Warm] {
                        rows.push(failed(e.to_string(), s, m, 0));
                    }
                }
                continue;
            }
        };
        let lat = op.lattice();
        let seq = rhs_sequence(lat, cfg);
        for &solver in &cfg.solvers {
            let pre: std::result::Result<Box<dyn Preconditioner>, Error> = match solver {
                SolverKind::Cg => Ok(Box::new(Identity(lat.order()))),
                SolverKind::Pcg => StrangPreconditioner::build(op.interior_symbol(), lat)
                    .map(|p| Box::new(p) as Box<dyn Preconditioner>),
            };
            for mode in [GuessMode::Trivial, GuessMode::Warm] {
                let row = match &pre {
                    Err(e) => failed(e.to_string(), solver, mode, lat.order()),
                    Ok(pre) => match run_mode(&op, pre.as_ref(), &seq, mode, &cfg.solver) {
                        Ok((avg_iters, avg_ms, converged_all)) => BenchRow {
                            n,
                            order: lat.order(),
                            solver,
                            guess_mode: mode,
                            avg_iters,
                            avg_ms,
                            converged_all,
                            error: None,
                        },
                        Err(e) => failed(e.to_string(), solver, mode, lat.order()),
                    },
                };
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// CSV `n,N,solver,guess_mode,avg_iters,avg_ms,converged_all`; `avg_ms` is
/// left empty unless `timing` is set so that output is reproducible.
pub fn write_bench_csv<W: Write>(rows: &[BenchRow], timing: bool, mut w: W) -> Result<()> {
    writeln!(w, "n,N,solver,guess_mode,avg_iters,avg_ms,converged_all")?;
    for r in rows {
        let ms = if timing && r.avg_ms.is_finite() { format!("{:.3}", r.avg_ms) } else { String::new() };
        writeln!(
            w,
            "{},{},{},{},{:.1},{},{}",
            r.n,
            r.order,
            r.solver.name(),
            r.guess_mode.name(),
            r.avg_iters,
            ms,
            r.converged_all
        )?;
    }
    Ok(())
}
