//! Entire "cardinal" functions with their removable singularity at 0 filled in.

use num_complex::Complex64;

const SMALL: f64 = 1e-2;

/// `sin ζ / ζ`, equal to 1 at ζ = 0.
pub fn sinc_c(z: Complex64) -> Complex64 {
    if z.norm() < SMALL {
        let z2 = z * z;
        Complex64::from(1.0) - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// Real `sin x / x`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SMALL {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Real `sinh y / y`, i.e. `sinc(iy)`.
pub fn sinhc(y: f64) -> f64 {
    if y.abs() < SMALL {
        let y2 = y * y;
        1.0 + y2 / 6.0 + y2 * y2 / 120.0
    } else {
        y.sinh() / y
    }
}

/// Complex `sinh z / z`.
pub fn sinhc_c(z: Complex64) -> Complex64 {
    if z.norm() < SMALL {
        let z2 = z * z;
        Complex64::from(1.0) + z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sinh() / z
    }
}

/// Complex `tanh z / z`.
pub fn tanhc_c(z: Complex64) -> Complex64 {
    if z.norm() < SMALL {
        let z2 = z * z;
        Complex64::from(1.0) - z2 / 3.0 + z2 * z2 * (2.0 / 15.0) - z2 * z2 * z2 * (17.0 / 315.0)
    } else {
        z.tanh() / z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sinc_fixed_points() {
        assert_eq!(sinc_c(Complex64::from(0.0)), Complex64::from(1.0));
        assert!(sinc_c(Complex64::from(PI)).norm() < 1e-16);
        assert_eq!(sinc(0.0), 1.0);
    }

    #[test]
    fn series_and_ratio_agree_at_the_switch() {
        for k in 0..16 {
            let ang = k as f64 * PI / 8.0;
            let z = Complex64::from_polar(SMALL, ang);
            let ratio = z.sin() / z;
            assert!((sinc_c(z) - ratio).norm() < 1e-13);
            let z_in = Complex64::from_polar(SMALL * (1.0 - 1e-12), ang);
            assert!((sinc_c(z_in) - ratio).norm() < 1e-13);
            let sh = z.sinh() / z;
            assert!((sinhc_c(z_in) - sh).norm() < 1e-13);
            let th = z.tanh() / z;
            assert!((tanhc_c(z_in) - th).norm() < 1e-13);
        }
    }

    #[test]
    fn sinc_of_imaginary_is_sinhc() {
        for &y in &[0.0, 0.005, 0.3, 2.0, -1.5] {
            let a = sinc_c(Complex64::new(0.0, y));
            assert!(a.im.abs() < 1e-16);
            assert!((a.re - sinhc(y)).abs() < 1e-14 * sinhc(y));
        }
    }
}
