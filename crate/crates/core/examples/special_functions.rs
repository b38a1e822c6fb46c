//! Bessel functions, the logarithmic kernel across the κ = 0 blend, and branch-cut logs.

use isq_spectral::special::{bessel_jy, bessel_k, cut_log, hankel1, log_kernel, BranchCut, SeriesConfig, KAPPA_BLEND};
use num_complex::Complex64;

fn main() -> isq_spectral::Result<()> {
    let cfg = SeriesConfig::default();
    let x = Complex64::new(2.5, 0.0);
    for nu in [0.0, 0.5, 0.9] {
        let jy = bessel_jy(nu, x, &cfg)?;
        println!("nu={nu}: J={:.15} Y={:.15} H1={:.15}", jy.j.value.re, jy.y.value.re, hankel1(nu, x)?);
    }
    println!("K_0.3(1+i) = {:.15}", bessel_k(0.3, Complex64::new(1.0, 1.0), &cfg)?.value);

    // Y_κ(x) through the log kernel, continuous through κ = 0
    let ell = (x / 2.0).ln();
    for k in [0.0, 0.5 * KAPPA_BLEND, 2.0 * KAPPA_BLEND] {
        let y = log_kernel(k, ell, x * x, &cfg)?.value;
        println!("Y_{k}(2.5) via log kernel = {:.15}", y.re);
    }

    let z = Complex64::new(-1.0, -1e-3);
    println!("principal Log = {:.6}", cut_log(z, BranchCut::Pi)?);
    println!("3pi/2-cut Log = {:.6}", cut_log(z, BranchCut::ThreePiOver2)?);
    Ok(())
}
