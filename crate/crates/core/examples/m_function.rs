//! The Weyl-Titchmarsh function and its boundary values on the real axis.

use isq_spectral::measure::{density, m_function, m_function_wronskian, m_limit_check, DEFAULT_ETAS};
use isq_spectral::solutions::ExtensionParams;
use num_complex::Complex64;

fn main() -> isq_spectral::Result<()> {
    let p = ExtensionParams::new(0.25, 1.0)?;
    for z in [Complex64::new(1.0, 1.0), Complex64::new(-3.0, 0.2), Complex64::new(10.0, 1e-3)] {
        println!("M({z}) = {:.14}  wronskian route {:.14}", m_function(p, z)?, m_function_wronskian(p, z)?);
    }
    for e in [0.5, 2.0, 8.0] {
        let lim = m_limit_check(p, e, &DEFAULT_ETAS)?;
        println!(
            "E={e}: Im M(E+i0) = {:.12} +- {:.1e} (order {}), density {:.12}",
            lim.limit,
            lim.error,
            lim.order,
            density(p, e)
        );
    }
    Ok(())
}
