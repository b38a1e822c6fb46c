//! Forward and inverse transforms, Parseval and the round trip.

use isq_spectral::solutions::ExtensionParams;
use isq_spectral::transform::{forward_grid, inverse, parseval_defect, round_trip_defect, Bump, GridFunction};

fn main() -> isq_spectral::Result<()> {
    let e_max = 400.0;
    let p = ExtensionParams::new(-0.3, 1.2)?;
    let psi = GridFunction::from_smooth(&Bump::new(0.5, 4.5, 3)?, e_max)?;

    let phi = forward_grid(p, &psi, e_max)?;
    println!("{} energy nodes, atom coefficient {:?}", phi.e_nodes.len(), phi.atom_coeff);
    let back = inverse(p, &phi, &[1.0, 2.5, 4.0])?;
    for (r, b) in [1.0, 2.5, 4.0].iter().zip(back) {
        println!("psi({r}) ~ {b:.8}");
    }

    let report = parseval_defect(p, &psi, e_max)?;
    println!("Parseval defect {:.2e}, tail {:.2e}, inconclusive {}", report.defect, report.tail, report.inconclusive());
    println!("round trip defect {:.2e}", round_trip_defect(p, &psi, e_max)?);

    let hankel = ExtensionParams::hankel(0.5)?;
    println!("Hankel order 1/2 Parseval defect {:.2e}", parseval_defect(hankel, &psi, e_max)?.defect);
    Ok(())
}
