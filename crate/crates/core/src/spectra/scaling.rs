use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbol::least_squares_slope;

#[derive(Clone, Debug, Serialize)]
pub struct ScalingFit {
    /// Slope of `log lambda_min` against `log n_hat`.
    pub slope: f64,
    /// `lambda_min * n_hat` per point.
    pub scaled: Vec<f64>,
}

pub fn minimal_eig_scaling(family: &[(usize, f64)]) -> Result<ScalingFit> {
    if family.len() < 3 {
        return Err(Error::DegenerateFit(format!("need at least 3 sizes, got {}", family.len())));
    }
    if let Some(&(n, l)) = family.iter().find(|p| p.1 <= 0.0 || p.0 == 0) {
        return Err(Error::DegenerateFit(format!("nonpositive data point ({n}, {l:e})")));
    }
    let pts: Vec<(f64, f64)> = family.iter().map(|&(n, l)| ((n as f64).ln(), l.ln())).collect();
    let slope = least_squares_slope(&pts)?;
    Ok(ScalingFit { slope, scaled: family.iter().map(|&(n, l)| l * n as f64).collect() })
}

/// `lambda_1(T_n) <= lambda_1(K_N)` up to `slack`.
pub fn lower_bound_holds(toeplitz_min: f64, operator_min: f64, slack: f64) -> bool {
    toeplitz_min <= operator_min + slack
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_family_has_zero_slope() {
        let f = minimal_eig_scaling(&[(4, 1.0), (16, 1.0), (64, 1.0)]).unwrap();
        assert!(f.slope.abs() < 1e-14);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(minimal_eig_scaling(&[(4, 1.0), (16, 1.0)]).is_err());
        assert!(minimal_eig_scaling(&[(4, 1.0), (4, 2.0), (4, 3.0)]).is_err());
        assert!(minimal_eig_scaling(&[(4, 1.0), (8, 0.0), (16, 3.0)]).is_err());
    }
}
