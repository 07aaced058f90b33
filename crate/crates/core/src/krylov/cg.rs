use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm2};

use super::operator::{Identity, LinearOperator, Preconditioner};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StoppingRule {
    /// `|r_k| <= tol |r_0|`.
    Initial,
    /// `|r_k| <= tol |b|`.
    Rhs,
}

impl std::str::FromStr for StoppingRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "initial" => Ok(Self::Initial),
            "rhs" => Ok(Self::Rhs),
            _ => Err(Error::InvalidArgument(format!("unknown stopping rule {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub stopping: StoppingRule,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { tol: 1e-8, max_iter: 20_000, stopping: StoppingRule::Initial }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub iterations: usize,
    pub converged: bool,
    pub tolerance: f64,
    pub stopping: StoppingRule,
    pub preconditioner: String,
    pub initial_residual: f64,
    pub final_residual: f64,
    pub wall_time_ms: Option<f64>,
    pub residual_history: Vec<f64>,
}

pub fn cg(op: &dyn LinearOperator, b: &[f64], x0: &[f64], cfg: &SolverConfig) -> Result<(Vec<f64>, SolveReport)> {
    pcg(op, &Identity(op.dim()), b, x0, cfg)
}

pub fn pcg(
    op: &dyn LinearOperator,
    pre: &dyn Preconditioner,
    b: &[f64],
    x0: &[f64],
    cfg: &SolverConfig,
) -> Result<(Vec<f64>, SolveReport)> {
    let n = op.dim();
    for len in [b.len(), x0.len(), pre.dim()] {
        if len != n {
            return Err(Error::DimensionMismatch { expected: n, actual: len });
        }
    }
    let start = Instant::now();
    let mut x = x0.to_vec();
    let mut ax = vec![0.0; n];
    op.apply(&x, &mut ax);
    let mut r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
    let r0 = norm2(&r);
    let target = match cfg.stopping {
        StoppingRule::Initial => cfg.tol * r0,
        StoppingRule::Rhs => cfg.tol * norm2(b),
    };
    let mut history = vec![r0];
    let mut converged = r0 <= target;
    let mut iterations = 0;
    if !converged {
        let mut z = vec![0.0; n];
        pre.apply(&r, &mut z);
        let mut p = z.clone();
        let mut rz = dot(&r, &z);
        let mut ap = vec![0.0; n];
        for k in 1..=cfg.max_iter {
            op.apply(&p, &mut ap);
            let curv = dot(&p, &ap);
            if curv <= 0.0 || !curv.is_finite() {
                return Err(Error::Indefinite { iteration: k, curvature: curv });
            }
            let alpha = rz / curv;
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            let rn = norm2(&r);
            history.push(rn);
            iterations = k;
            if rn <= target {
                converged = true;
                break;
            }
            pre.apply(&r, &mut z);
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
    }
    let report = SolveReport {
        iterations,
        converged,
        tolerance: cfg.tol,
        stopping: cfg.stopping,
        preconditioner: pre.id().to_string(),
        initial_residual: r0,
        final_residual: *history.last().expect("nonempty"),
        wall_time_ms: Some(start.elapsed().as_secs_f64() * 1e3),
        residual_history: history,
    };
    Ok((x, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::krylov::operator::Diagonal;

    #[test]
    fn identity_takes_one_iteration() {
        let b = vec![1.0, -2.0, 3.0];
        let (x, rep) = cg(&Identity(3), &b, &[0.0; 3], &SolverConfig::default()).unwrap();
        assert_eq!(rep.iterations, 1);
        assert!(rep.converged);
        assert_eq!(x, b);
    }

    #[test]
    fn two_distinct_eigenvalues_terminate() {
        let op = Diagonal(vec![1.0, 1e4]);
        let (_, rep) = cg(&op, &[1.0, 1.0], &[0.0, 0.0], &SolverConfig::default()).unwrap();
        assert!(rep.converged && rep.iterations <= 2);
    }

    #[test]
    fn indefinite_operator_breaks_down() {
        let op = Diagonal(vec![1.0, -1.0]);
        let r = cg(&op, &[0.0, 1.0], &[0.0, 0.0], &SolverConfig::default());
        assert!(matches!(r, Err(Error::Indefinite { .. })));
    }

    #[test]
    fn iteration_cap_reports_nonconvergence() {
        let op = Diagonal((1..=50).map(|v| v as f64).collect());
        let cfg = SolverConfig { max_iter: 3, ..Default::default() };
        let (_, rep) = cg(&op, &vec![1.0; 50], &vec![0.0; 50], &cfg).unwrap();
        assert!(!rep.converged);
        assert_eq!(rep.iterations, 3);
    }

    #[test]
    fn exact_guess_needs_no_iterations() {
        let op = Diagonal(vec![2.0, 3.0]);
        let cfg = SolverConfig { stopping: StoppingRule::Rhs, ..Default::default() };
        let (_, rep) = cg(&op, &[2.0, 3.0], &[1.0, 1.0], &cfg).unwrap();
        assert_eq!(rep.iterations, 0);
        assert!(rep.converged);
    }
}
