//! Density and atom of the spectral measure, uniformly across κ = 0.

use isq_spectral::measure::build_measure;
use isq_spectral::solutions::ExtensionParams;

fn main() -> isq_spectral::Result<()> {
    let theta = 1.3;
    for k in [-0.5, -1e-6, 0.0, 1e-6, 0.5] {
        let m = build_measure(ExtensionParams::new(k, theta)?)?;
        let dens: Vec<String> = [0.1, 1.0, 10.0].iter().map(|&e| format!("{:.10}", m.density(e))).collect();
        match m.atom {
            Some(a) => println!("kappa={k:>7}: density {dens:?}, atom at {:.12} weight {:.12}", a.energy, a.weight),
            None => println!("kappa={k:>7}: density {dens:?}, no atom"),
        }
    }

    let m = build_measure(ExtensionParams::new(0.0, std::f64::consts::FRAC_PI_2)?)?;
    let mass = m.integrate(|e| (-e * e).exp(), -5.0, 5.0, 1e-12)?;
    println!("integral of exp(-E^2) against the measure at (0, pi/2) = {mass:.12}");
    Ok(())
}
