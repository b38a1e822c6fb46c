//! Bound-state energy, atom weight, residue and normalization.

use isq_spectral::measure::{atom_weight, bound_state_energy, residue_weight};
use isq_spectral::solutions::ExtensionParams;
use isq_spectral::transform::bound_state_norm;

fn main() -> isq_spectral::Result<()> {
    for (k, t) in [(0.0, std::f64::consts::FRAC_PI_2), (0.5, 1.6), (-0.3, 1.2), (0.8, 0.3)] {
        let p = ExtensionParams::new(k, t)?;
        match bound_state_energy(p)? {
            Some(e) => {
                let w = atom_weight(p)?.unwrap();
                let res = residue_weight(p, 1e-4, 64)?.unwrap();
                let norm = bound_state_norm(p)?.unwrap();
                println!("({k}, {t}): E_b={e:.12} weight={w:.12} residue={res:.12} 1/norm_sq={:.12}", 1.0 / norm);
            }
            None => println!("({k}, {t}): no bound state"),
        }
    }
    Ok(())
}
