//! Second-order Taylor data of `det f` at the origin.
//!
//! With `f(0) = F0`, `df/dtheta_a(0) = i D_a` and `d2f/dtheta_a dtheta_b(0) = -D_ab`,
//! the multilinearity of the determinant in its columns gives
//!
//! ```text
//! d_a det      = i sum_k det(F0 | col k <- D_a)
//! d_a d_b det  = -sum_k det(F0 | col k <- D_ab) - sum_{k != l} det(F0 | col k <- D_a, col l <- D_b)
//! ```

use faer::Mat;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{rat_int, to_f64, RatMatrix, Rational};

use super::MatrixSymbol;

#[derive(Clone, Debug, Serialize)]
pub struct DetTaylor {
    pub value: f64,
    pub gradient: [f64; 2],
    pub hessian: [[f64; 2]; 2],
    #[serde(skip)]
    pub exact: Option<ExactDetTaylor>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactDetTaylor {
    pub value: Rational,
    pub gradient: [Rational; 2],
    pub hessian: [[Rational; 2]; 2],
}

trait Field: Clone {
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn scale(&self, k: i64) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn scale(&self, k: i64) -> Self {
        self * rat_int(k)
    }
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn scale(&self, k: i64) -> Self {
        self * k as f64
    }
}

/// Row-major square matrix over `T` with a determinant.
struct Sq<T> {
    n: usize,
    a: Vec<T>,
}

impl<T: Field> Sq<T> {
    fn zeros(n: usize) -> Self {
        Self { n, a: vec![T::zero(); n * n] }
    }

    fn axpy(&mut self, k: i64, o: &Self) {
        for (d, v) in self.a.iter_mut().zip(&o.a) {
            *d = d.add(&v.scale(k));
        }
    }

    fn with_cols(&self, repl: &[(usize, &Self)]) -> Self {
        let mut out = Self { n: self.n, a: self.a.clone() };
        for &(c, src) in repl {
            for r in 0..self.n {
                out.a[r * self.n + c] = src.a[r * self.n + c].clone();
            }
        }
        out
    }
}

fn taylor_terms<T: Field>(f0: &Sq<T>, d: &[Sq<T>; 2], d2: &[[Sq<T>; 2]; 2], det: impl Fn(&Sq<T>) -> T) -> (T, [T; 2], [[T; 2]; 2]) {
    let n = f0.n;
    let value = det(f0);
    let mut grad = [T::zero(), T::zero()];
    for a in 0..2 {
        for k in 0..n {
            grad[a] = grad[a].add(&det(&f0.with_cols(&[(k, &d[a])])));
        }
    }
    let mut hess = [[T::zero(), T::zero()], [T::zero(), T::zero()]];
    for a in 0..2 {
        for b in a..2 {
            let mut h = T::zero();
            for k in 0..n {
                h = h.sub(&det(&f0.with_cols(&[(k, &d2[a][b])])));
            }
            for k in 0..n {
                for l in 0..n {
                    if k != l {
                        h = h.sub(&det(&f0.with_cols(&[(k, &d[a]), (l, &d[b])])));
                    }
                }
            }
            hess[a][b] = h.clone();
            hess[b][a] = h;
        }
    }
    (value, grad, hess)
}

fn derivative_data<T: Field>(
    sym: &MatrixSymbol,
    block: impl Fn(&super::Block) -> Vec<T>,
) -> (Sq<T>, [Sq<T>; 2], [[Sq<T>; 2]; 2]) {
    let s = sym.s();
    let mut f0 = Sq::zeros(s);
    let mut d = [Sq::zeros(s), Sq::zeros(s)];
    let mut d2 = [[Sq::zeros(s), Sq::zeros(s)], [Sq::zeros(s), Sq::zeros(s)]];
    for (j, b) in sym.coefficients() {
        let m = Sq { n: s, a: block(b) };
        f0.axpy(1, &m);
        for a in 0..2 {
            d[a].axpy(j[a] as i64, &m);
            for c in 0..2 {
                d2[a][c].axpy(j[a] as i64 * j[c] as i64, &m);
            }
        }
    }
    (f0, d, d2)
}

fn rat_det(m: &Sq<Rational>) -> Rational {
    RatMatrix::from_fn(m.n, m.n, |i, j| m.a[i * m.n + j].clone()).determinant()
}

fn f64_det(m: &Sq<f64>) -> f64 {
    linalg::real_determinant(Mat::from_fn(m.n, m.n, |i, j| m.a[i * m.n + j]).as_ref())
}

/// Analytic Taylor data; exact when every block is exact.
pub fn det_taylor_at_origin(sym: &MatrixSymbol) -> Result<DetTaylor> {
    if sym.is_exact() {
        let (f0, d, d2) = derivative_data(sym, |b| {
            let m = b.exact.as_ref().expect("exact symbol");
            (0..m.rows() * m.cols()).map(|k| m.get(k / m.cols(), k % m.cols()).clone()).collect()
        });
        let (value, g, hess) = taylor_terms(&f0, &d, &d2, rat_det);
        if !g[0].is_zero() || !g[1].is_zero() {
            return Err(Error::NotHermitian(format!(
                "det f has a non-real first derivative (imaginary parts {}, {})",
                g[0], g[1]
            )));
        }
        let exact = ExactDetTaylor { value, gradient: [Zero::zero(), Zero::zero()], hessian: hess };
        return Ok(DetTaylor {
            value: to_f64(&exact.value),
            gradient: [0.0, 0.0],
            hessian: [
                [to_f64(&exact.hessian[0][0]), to_f64(&exact.hessian[0][1])],
                [to_f64(&exact.hessian[1][0]), to_f64(&exact.hessian[1][1])],
            ],
            exact: Some(exact),
        });
    }
    let (f0, d, d2) = derivative_data(sym, |b| b.values.clone());
    let (value, g, hessian) = taylor_terms(&f0, &d, &d2, f64_det);
    let scale = f0.a.iter().fold(1.0_f64, |m, v| m.max(v.abs())).powi(sym.s() as i32);
    if g[0].abs() > 1e-10 * scale || g[1].abs() > 1e-10 * scale {
        return Err(Error::NotHermitian(format!(
            "det f has a non-real first derivative (imaginary parts {:e}, {:e})",
            g[0], g[1]
        )));
    }
    Ok(DetTaylor { value, gradient: [0.0, 0.0], hessian, exact: None })
}

/// Central differences with step `h` and one Richardson step (`h`, `h/2`).
pub fn det_taylor_finite_difference(sym: &MatrixSymbol, h: f64) -> DetTaylor {
    let det = |t: [f64; 2]| linalg::complex_determinant(sym.eval(t).as_ref()).re;
    let rich = |d: &dyn Fn(f64) -> f64| (4.0 * d(h / 2.0) - d(h)) / 3.0;
    let e = |a: usize, x: f64| if a == 0 { [x, 0.0] } else { [0.0, x] };
    let value = det([0.0, 0.0]);
    let mut gradient = [0.0; 2];
    let mut hessian = [[0.0; 2]; 2];
    for a in 0..2 {
        gradient[a] = rich(&|k| (det(e(a, k)) - det(e(a, -k))) / (2.0 * k));
        hessian[a][a] = rich(&|k| (det(e(a, k)) - 2.0 * value + det(e(a, -k))) / (k * k));
    }
    let mixed = rich(&|k| {
        (det([k, k]) - det([k, -k]) - det([-k, k]) + det([-k, -k])) / (4.0 * k * k)
    });
    hessian[0][1] = mixed;
    hessian[1][0] = mixed;
    DetTaylor { value, gradient, hessian, exact: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_symbol() {
        let t = det_taylor_at_origin(&MatrixSymbol::identity(4)).unwrap();
        assert_eq!(t.value, 1.0);
        assert_eq!(t.hessian, [[0.0; 2]; 2]);
    }

    #[test]
    fn scalar_laplacian_has_unit_hessian() {
        let t = det_taylor_at_origin(&MatrixSymbol::scalar_laplacian()).unwrap();
        let ex = t.exact.unwrap();
        assert!(ex.value.is_zero());
        assert_eq!(ex.hessian[0][0], rat_int(1));
        assert_eq!(ex.hessian[1][1], rat_int(1));
        assert!(ex.hessian[0][1].is_zero());
    }
}
