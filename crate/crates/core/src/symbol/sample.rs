use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::MatrixSymbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    /// `G_n = {(j pi / n, k pi / n)}` on `[0, pi)^2`.
    Half,
    /// `J_n = {(2 pi j / n, 2 pi k / n)}` on `[0, 2 pi)^2`.
    Periodic,
}

impl GridKind {
    pub fn step(self, n: usize) -> f64 {
        match self {
            GridKind::Half => PI / n as f64,
            GridKind::Periodic => 2.0 * PI / n as f64,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GridKind::Half => "half",
            GridKind::Periodic => "periodic",
        }
    }
}

impl std::str::FromStr for GridKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "half" => Ok(GridKind::Half),
            "periodic" => Ok(GridKind::Periodic),
            _ => Err(Error::InvalidArgument(format!("unknown grid kind {s:?}"))),
        }
    }
}

/// Eigenvalue functions of a symbol sampled on a grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenSample {
    pub n: usize,
    pub grid_kind: GridKind,
    pub s: usize,
    /// `samples[l][j * n + k] = lambda_{l+1}(f(theta_j, theta_k))`.
    pub samples: Vec<Vec<f64>>,
    /// `(m_l, M_l)` per eigenvalue function.
    pub intervals: Vec<(f64, f64)>,
}

impl EigenSample {
    pub fn theta(&self, j: usize, k: usize) -> [f64; 2] {
        let h = self.grid_kind.step(self.n);
        [j as f64 * h, k as f64 * h]
    }

    /// `(j, k)` of flat node index.
    pub fn node(&self, idx: usize) -> (usize, usize) {
        (idx / self.n, idx % self.n)
    }

    /// All samples concatenated in `l`-major order.
    pub fn concatenated(&self) -> Vec<f64> {
        self.samples.iter().flatten().copied().collect()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "l,j,k,theta1,theta2,lambda")?;
        for (l, p) in self.samples.iter().enumerate() {
            for (idx, v) in p.iter().enumerate() {
                let (j, k) = self.node(idx);
                let t = self.theta(j, k);
                writeln!(w, "{},{},{},{:?},{:?},{:?}", l + 1, j, k, t[0], t[1], v)?;
            }
        }
        Ok(())
    }
}

pub fn sample_eigs(sym: &MatrixSymbol, n: usize, grid_kind: GridKind) -> Result<EigenSample> {
    if n == 0 {
        return Err(Error::InvalidArgument("grid resolution n must be positive".into()));
    }
    let s = sym.s();
    let h = grid_kind.step(n);
    let per_node: Vec<Vec<f64>> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (j, k) = (idx / n, idx % n);
            sym.eigenvalues_at([j as f64 * h, k as f64 * h])
        })
        .collect::<Result<_>>()?;
    let mut samples = vec![vec![0.0; n * n]; s];
    for (idx, ev) in per_node.iter().enumerate() {
        for (l, v) in ev.iter().enumerate() {
            samples[l][idx] = *v;
        }
    }
    let intervals = samples
        .iter()
        .map(|p| {
            p.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
        })
        .collect();
    Ok(EigenSample { n, grid_kind, s, samples, intervals })
}

/// Slope of `log lambda_1` against `log |theta|` over the nodes with
/// `1 <= max(j, k) <= max(2, n / 16)` of a half-grid sample.
pub fn min_eig_zero_order(sample: &EigenSample) -> Result<f64> {
    const MIN_N: usize = 8;
    if sample.n < MIN_N {
        return Err(Error::SampleTooCoarse { n: sample.n, min: MIN_N });
    }
    if sample.grid_kind != GridKind::Half {
        return Err(Error::InvalidArgument("zero-order fit needs a half grid sample".into()));
    }
    let r = (sample.n / 16).max(2);
    let mut pts = Vec::new();
    for j in 0..=r {
        for k in 0..=r {
            if j.max(k) == 0 {
                continue;
            }
            let lam = sample.samples[0][j * sample.n + k];
            if lam <= 0.0 {
                continue;
            }
            let t = sample.theta(j, k);
            pts.push(((t[0] * t[0] + t[1] * t[1]).sqrt().ln(), lam.ln()));
        }
    }
    least_squares_slope(&pts)
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> Result<f64> {
    if pts.len() < 2 {
        return Err(Error::DegenerateFit(format!("{} usable points", pts.len())));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= 1e-300 {
        return Err(Error::DegenerateFit("abscissae coincide".into()));
    }
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_symbol_samples_are_one() {
        let s = sample_eigs(&MatrixSymbol::identity(2), 5, GridKind::Periodic).unwrap();
        assert!(s.samples.iter().flatten().all(|&v| (v - 1.0).abs() < 1e-15));
        assert_eq!(s.samples[0].len(), 25);
    }

    #[test]
    fn csv_row_count() {
        let s = sample_eigs(&MatrixSymbol::identity(2), 3, GridKind::Half).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1 + 2 * 9);
    }

    #[test]
    fn coarse_sample_is_rejected() {
        let s = sample_eigs(&MatrixSymbol::scalar_laplacian(), 4, GridKind::Half).unwrap();
        assert!(matches!(min_eig_zero_order(&s), Err(Error::SampleTooCoarse { .. })));
    }
}
