//! The transform maps the Hamiltonian to multiplication by E.

use isq_spectral::solutions::ExtensionParams;
use isq_spectral::transform::{diag_defect, Bump};

fn main() -> isq_spectral::Result<()> {
    let psi = Bump::new(1.0, 2.0, 4)?;
    let energies = [0.5, 1.0, 4.0, 9.0, 25.0];
    for (k, t) in [(0.0, 0.4), (0.5, 2.0), (-0.7, 1.1)] {
        let d = diag_defect(ExtensionParams::new(k, t)?, &psi, &energies)?;
        println!("({k}, {t}): max relative defect {d:.2e}");
    }
    Ok(())
}
