//! The regular, logarithmic and decaying solutions and their Wronskians.

use isq_spectral::solutions::{eval_u, eval_u_theta, eval_v, eval_w, wronskian_at, wronskian_vu, ExtensionParams};
use num_complex::Complex64;

fn main() -> isq_spectral::Result<()> {
    let z = Complex64::new(4.0, 0.0);
    println!("{:>8} {:>6} {:>22} {:>22}", "kappa", "r", "u", "w");
    for k in [-0.5, -1e-3, 0.0, 1e-3, 0.5] {
        for r in [0.1, 1.0, 3.0] {
            let (u, w) = (eval_u(k, z, r)?, eval_w(k, z, r)?);
            println!("{k:>8} {r:>6} {:>22.15} {:>22.15}", u.value.re, w.value.re);
        }
    }

    let p = ExtensionParams::new(0.3, 1.2)?;
    let z = Complex64::new(-2.0, 0.5);
    let r = 0.7;
    let (u, v) = (eval_u_theta(p, z, r)?, eval_v(p.kappa, z, r)?);
    println!("W(u,w) = {:.15} (2/pi = {:.15})", wronskian_at(eval_u(0.3, z, r)?, eval_w(0.3, z, r)?).re, 2.0 / std::f64::consts::PI);
    println!("W(v,u) at r=0.7 = {:.12}", wronskian_at(v, eval_u(0.3, z, r)?));
    println!("W(v,u) closed form = {:.12}", wronskian_vu(0.3, z)?);
    println!("u_theta = {:.12}", u.value);
    Ok(())
}
