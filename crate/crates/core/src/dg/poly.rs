//! Dense univariate polynomials with rational coefficients.

use num_traits::{One, Zero};

use crate::rational::{rat_int, Rational};

/// Coefficients in ascending powers.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn constant(c: Rational) -> Self {
        Poly(vec![c])
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::constant(Rational::zero());
        }
        Poly(self.0.iter().enumerate().skip(1).map(|(k, c)| c * rat_int(k as i64)).collect())
    }

    /// `int_a^b self dx`, exact.
    pub fn integrate(&self, a: &Rational, b: &Rational) -> Rational {
        let anti = |x: &Rational| {
            let mut acc = Rational::zero();
            let mut pw = x.clone();
            for (k, c) in self.0.iter().enumerate() {
                acc += c * &pw / rat_int(k as i64 + 1);
                pw *= x;
            }
            acc
        };
        anti(b) - anti(a)
    }

    /// Lagrange polynomial equal to 1 at `pts[i]` and 0 at the other points.
    pub fn lagrange(pts: &[Rational], i: usize) -> Poly {
        let mut p = Poly::constant(Rational::one());
        for (j, q) in pts.iter().enumerate() {
            if j == i {
                continue;
            }
            let den = &pts[i] - q;
            p = p.mul(&Poly(vec![-q / &den, Rational::one() / den]));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn lagrange_is_cardinal() {
        let pts = vec![rat(0, 1), rat(1, 3), rat(2, 3), rat(1, 1)];
        for i in 0..4 {
            let p = Poly::lagrange(&pts, i);
            for (j, x) in pts.iter().enumerate() {
                assert_eq!(p.eval(x), if i == j { rat(1, 1) } else { rat(0, 1) });
            }
        }
    }

    #[test]
    fn integral_and_derivative() {
        let p = Poly(vec![rat(1, 1), rat(0, 1), rat(3, 1)]);
        assert_eq!(p.integrate(&rat(0, 1), &rat(1, 1)), rat(2, 1));
        assert_eq!(p.derivative(), Poly(vec![rat(0, 1), rat(6, 1)]));
    }
}
