//! Gamma, digamma and reciprocal-gamma helpers.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn near_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Γ(z) for complex `z`, with reflection for `Re z < 1/2`.
pub fn gamma_fn(z: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(z) {
        return Err(Error::Domain(format!("gamma pole at z = {}", z.re)));
    }
    if z.im == 0.0 && z.re >= 1.0 && z.re <= 23.0 && z.re == z.re.round() {
        let fact: f64 = (1..z.re as u32).map(f64::from).product();
        return Ok(Complex64::new(fact, 0.0));
    }
    if z.re < 0.5 {
        let s = (Complex64::from(PI) * z).sin();
        let g = gamma_fn(Complex64::new(1.0, 0.0) - z)?;
        return Ok(Complex64::from(PI) / (s * g));
    }
    let z = z - 1.0;
    let mut x = Complex64::from(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x)
}

/// Γ(x) for real `x`.
pub fn gamma_real(x: f64) -> Result<f64> {
    gamma_fn(Complex64::from(x)).map(|g| g.re)
}

/// Digamma ψ(x) for real `x > 0`: upward recurrence then the Stirling tail.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("digamma requires x > 0, got {x}")));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Bernoulli tail: -sum B_2k / (2k x^2k)
    let tail = inv2
        * (-1.0 / 12.0
            + inv2
                * (1.0 / 120.0
                    + inv2
                        * (-1.0 / 252.0
                            + inv2 * (1.0 / 240.0 + inv2 * (-1.0 / 132.0 + inv2 * (691.0 / 32_760.0))))));
    Ok(acc + x.ln() - 0.5 / x + tail)
}

// Taylor coefficients of 1/Γ(1+x) = Σ c_k x^k (c_k = a_{k+1} of the classical
// expansion 1/Γ(z) = Σ a_k z^k).
const RGAMMA_TAYLOR: [f64; 15] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
];

/// Even and odd parts of the reciprocal gamma near 1, for small `|x|`:
/// returns `((1/Γ(1+x) + 1/Γ(1-x))/2, (1/Γ(1+x) - 1/Γ(1-x))/(2x))`.
///
/// Truncated Taylor series, accurate to rounding for `|x| <= 0.1`.
pub fn rgamma_even_odd(x: f64) -> (f64, f64) {
    let x2 = x * x;
    let mut even = 0.0;
    let mut odd = 0.0;
    for k in (0..RGAMMA_TAYLOR.len()).rev() {
        if k % 2 == 0 {
            even = even * x2 + RGAMMA_TAYLOR[k];
        } else {
            odd = odd * x2 + RGAMMA_TAYLOR[k];
        }
    }
    (even, odd)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        for n in 1..15u32 {
            let fact: f64 = (1..n).map(f64::from).product();
            let g = gamma_real(n as f64).unwrap();
            assert!((g - fact).abs() <= 1e-13 * fact, "n = {n}");
        }
        assert!((gamma_real(5.0).unwrap() - 24.0).abs() < 1e-12);
    }

    #[test]
    fn half_integer_and_reflection() {
        assert!((gamma_real(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(gamma_fn(Complex64::from(-2.0)).is_err());
        assert!(gamma_fn(Complex64::from(0.0)).is_err());
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-14);
        let psi_half = -EULER_GAMMA - 2.0 * std::f64::consts::LN_2;
        assert!((digamma(0.5).unwrap() - psi_half).abs() < 1e-13);
        // ψ(x+1) = ψ(x) + 1/x
        for &x in &[0.05, 0.3, 1.7, 2.9] {
            let d = digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x;
            assert!(d.abs() < 1e-12, "x = {x}");
        }
        assert!(digamma(0.0).is_err());
    }

    #[test]
    fn reciprocal_gamma_split_matches_lanczos() {
        for &x in &[0.0, 1e-3, 0.01, -0.02, 0.1] {
            let (e, o) = rgamma_even_odd(x);
            let p = 1.0 / gamma_real(1.0 + x).unwrap();
            let m = 1.0 / gamma_real(1.0 - x).unwrap();
            assert!((e - 0.5 * (p + m)).abs() < 2e-15, "even part at {x}");
            if x != 0.0 {
                assert!((o - (p - m) / (2.0 * x)).abs() < 1e-11, "odd part at {x}");
            } else {
                assert!((o - EULER_GAMMA).abs() < 1e-16);
            }
        }
    }
}
