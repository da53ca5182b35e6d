//! Roots of monic complex cubics.
//!
//! Laguerre iteration finds one root, the remainder is deflated to a
//! quadratic, and every root is then Newton-polished against the original
//! polynomial.

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `s³ + b1 s² + b2 s + b3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonicCubic {
    pub b1: Complex64,
    pub b2: Complex64,
    pub b3: Complex64,
}

impl MonicCubic {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        ((s + self.b1) * s + self.b2) * s + self.b3
    }

    /// p, p', p'' at `s`.
    fn eval_with_derivs(&self, s: Complex64) -> (Complex64, Complex64, Complex64) {
        let p = self.eval(s);
        let dp = (3.0 * s + 2.0 * self.b1) * s + self.b2;
        let ddp = 6.0 * s + 2.0 * self.b1;
        (p, dp, ddp)
    }

    /// Scale of the coefficients, used for relative convergence tests.
    fn scale(&self) -> f64 {
        1.0f64
            .max(self.b1.norm())
            .max(self.b2.norm().sqrt())
            .max(self.b3.norm().cbrt())
    }

    pub fn roots(&self) -> [Complex64; 3] {
        let first = self.laguerre(ZERO);
        // synthetic division by (s - first)
        let c1 = self.b1 + first;
        let c2 = self.b2 + first * c1;
        let (second, third) = quadratic_roots(c1, c2);
        [first, second, third].map(|r| self.polish(r))
    }

    fn laguerre(&self, start: Complex64) -> Complex64 {
        const N: f64 = 3.0;
        let tol = 4.0 * f64::EPSILON * self.scale();
        let mut x = start;
        for iter in 0..200 {
            let (p, dp, ddp) = self.eval_with_derivs(x);
            if p == ZERO {
                return x;
            }
            let g = dp / p;
            let h = g * g - ddp / p;
            let root = ((N - 1.0) * (N * h - g * g)).sqrt();
            let plus = g + root;
            let minus = g - root;
            let denom = if plus.norm() >= minus.norm() { plus } else { minus };
            let step = if denom.norm() > 0.0 {
                N / denom
            } else {
                // stationary point: kick off along a fixed direction
                Complex64::from_polar(1.0 + x.norm(), iter as f64)
            };
            x -= step;
            if step.norm() <= tol * (1.0 + x.norm()) {
                break;
            }
        }
        x
    }

    fn polish(&self, mut x: Complex64) -> Complex64 {
        let mut residual = self.eval(x).norm();
        for _ in 0..4 {
            let (p, dp, _) = self.eval_with_derivs(x);
            if dp == ZERO || p == ZERO {
                break;
            }
            let candidate = x - p / dp;
            let r = self.eval(candidate).norm();
            if r < residual {
                x = candidate;
                residual = r;
            } else {
                break;
            }
        }
        x
    }
}

/// Roots of `s² + c1 s + c2`, computed without cancellation.
pub fn quadratic_roots(c1: Complex64, c2: Complex64) -> (Complex64, Complex64) {
    let disc = (c1 * c1 - 4.0 * c2).sqrt();
    let plus = c1 + disc;
    let minus = c1 - disc;
    let big = if plus.norm() >= minus.norm() { plus } else { minus };
    if big == ZERO {
        return (ZERO, ZERO);
    }
    let q = -0.5 * big;
    (q, c2 / q)
}
