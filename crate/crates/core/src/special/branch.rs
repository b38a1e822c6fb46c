//! Logarithms and powers on a cut plane.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Angular tolerance for deciding that a point sits on a cut ray.
pub const CUT_TOLERANCE: f64 = 1e-12;

/// Which ray is removed from the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchCut {
    /// Cut along the negative real axis; arguments in `(-π, π)`.
    Pi,
    /// Cut along the negative imaginary axis; arguments in `(-π/2, 3π/2)`.
    ThreePiOver2,
}

impl BranchCut {
    pub fn cut_angle(self) -> f64 {
        match self {
            BranchCut::Pi => PI,
            BranchCut::ThreePiOver2 => 1.5 * PI,
        }
    }

    /// Argument of `z` reduced into this cut's range, or a branch error.
    pub fn arg(self, z: Complex64) -> Result<f64> {
        if z.re == 0.0 && z.im == 0.0 {
            return Err(Error::Domain("argument 0 has no logarithm".into()));
        }
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite argument {z}")));
        }
        let mut a = z.im.atan2(z.re);
        match self {
            BranchCut::Pi => {
                if PI - a.abs() < CUT_TOLERANCE {
                    return Err(Error::Branch { re: z.re, im: z.im });
                }
            }
            BranchCut::ThreePiOver2 => {
                if (a + 0.5 * PI).abs() < CUT_TOLERANCE {
                    return Err(Error::Branch { re: z.re, im: z.im });
                }
                if a < -0.5 * PI {
                    a += 2.0 * PI;
                }
            }
        }
        Ok(a)
    }
}

/// Logarithm with `log 1 = 0` on the given cut plane.
pub fn cut_log(z: Complex64, cut: BranchCut) -> Result<Complex64> {
    let a = cut.arg(z)?;
    Ok(Complex64::new(z.norm().ln(), a))
}

/// `z^ρ = exp(ρ log z)` on the given cut plane.
pub fn cut_power(z: Complex64, rho: Complex64, cut: BranchCut) -> Result<Complex64> {
    Ok((rho * cut_log(z, cut)?).exp())
}

/// Argument in `(-π, π]`, with the negative real axis always mapped to `+π`
/// regardless of the sign of a zero imaginary part.
pub(crate) fn arg_upper(z: Complex64) -> f64 {
    if z.im == 0.0 && z.re < 0.0 {
        PI
    } else {
        z.im.atan2(z.re)
    }
}

/// Principal logarithm using [`arg_upper`].
pub(crate) fn log_upper(z: Complex64) -> Complex64 {
    Complex64::new(z.norm().ln(), arg_upper(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_of_one_is_zero() {
        for cut in [BranchCut::Pi, BranchCut::ThreePiOver2] {
            assert_eq!(cut_log(Complex64::from(1.0), cut).unwrap(), Complex64::from(0.0));
        }
    }

    #[test]
    fn minus_one_on_the_three_halves_cut() {
        let l = cut_log(Complex64::from(-1.0), BranchCut::ThreePiOver2).unwrap();
        assert!(l.re.abs() < 1e-16 && (l.im - PI).abs() < 1e-16);
        // negative zero imaginary part must land on the same side
        let l = cut_log(Complex64::new(-1.0, -0.0), BranchCut::ThreePiOver2).unwrap();
        assert!((l.im - PI).abs() < 1e-16);
        assert!(cut_log(Complex64::from(-1.0), BranchCut::Pi).is_err());
    }

    #[test]
    fn sqrt_of_negative_energy_is_positive_imaginary() {
        for &e in &[-0.5, -1.0, -7.25] {
            let s = cut_power(Complex64::from(e), Complex64::from(0.5), BranchCut::ThreePiOver2).unwrap();
            assert!(s.re.abs() < 1e-15 * s.norm());
            assert!((s.im - (-e as f64).sqrt()).abs() < 1e-15 * s.norm());
        }
    }

    #[test]
    fn cut_rays_and_zero_are_rejected() {
        let down = Complex64::new(0.0, -2.0);
        assert!(matches!(cut_log(down, BranchCut::ThreePiOver2), Err(Error::Branch { .. })));
        assert!(cut_log(down, BranchCut::Pi).is_ok());
        assert!(matches!(cut_log(Complex64::from(0.0), BranchCut::Pi), Err(Error::Domain(_))));
        // just below the negative real axis is an interior point of the 3π/2 plane
        let below = Complex64::new(-1.0, -1e-3);
        let a = BranchCut::ThreePiOver2.arg(below).unwrap();
        assert!(a > PI && a < 1.5 * PI);
    }
}
