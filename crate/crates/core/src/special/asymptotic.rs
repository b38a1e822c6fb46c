//! Large-argument Hankel expansions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_TERMS: usize = 200;
const TERM_TOL: f64 = 1e-17;

/// Bessel functions of the first and second kind at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jy {
    pub j: Complex64,
    pub y: Complex64,
}

/// `Σ a_k(ν) w^k` for the Hankel coefficients `a_k(ν)`, stopped at the
/// smallest term of the (divergent) expansion.
fn hankel_sum(nu: f64, w: Complex64) -> Result<Complex64> {
    let mu = 4.0 * nu * nu;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = f64::INFINITY;
    for k in 1..MAX_TERMS {
        let odd = (2 * k - 1) as f64;
        term *= w * ((mu - odd * odd) / (8.0 * k as f64));
        let tm = term.norm();
        if tm <= TERM_TOL * sum.norm() {
            return Ok(sum + term);
        }
        if tm > prev && (k as f64) > nu {
            // past the smallest term: the last one added bounds the error
            if prev <= 1e-15 * sum.norm() {
                return Ok(sum);
            }
            return Err(Error::SeriesFailure { terms: k, last_term: prev });
        }
        sum += term;
        prev = tm;
    }
    Err(Error::SeriesFailure { terms: MAX_TERMS, last_term: prev })
}

/// `(H^{(1)}_ν(x), H^{(2)}_ν(x))` for large `|x|`, `-π < arg x < π`.
pub fn hankel_pair(nu: f64, x: Complex64) -> Result<(Complex64, Complex64)> {
    let i = Complex64::i();
    let inv = x.inv();
    let sp = hankel_sum(nu, i * inv)?;
    let sm = hankel_sum(nu, -i * inv)?;
    let pre = (2.0 / (PI * x)).sqrt();
    let omega = x - 0.5 * PI * nu - 0.25 * PI;
    let ep = (i * omega).exp();
    let em = (-i * omega).exp();
    Ok((pre * ep * sp, pre * em * sm))
}

/// `J_ν(x)` and `Y_ν(x)` for large `|x|`, `-π < arg x < π`.
pub fn bessel_jy(nu: f64, x: Complex64) -> Result<Jy> {
    let (h1, h2) = hankel_pair(nu, x)?;
    Ok(Jy { j: 0.5 * (h1 + h2), y: (h1 - h2) / Complex64::new(0.0, 2.0) })
}

/// `K_ν(y)` for large `|y|`, `|arg y| < 3π/2`.
pub fn bessel_k(nu: f64, y: Complex64) -> Result<Complex64> {
    let s = hankel_sum(nu, y.inv())?;
    Ok((PI / (2.0 * y)).sqrt() * (-y).exp() * s)
}
