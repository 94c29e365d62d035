//! Steady-state detection spectra of the resonator array at θ = 0.15π,
//! driving either end.

use std::f64::consts::PI;

use ssh_channels::chain::{build_hamiltonian, coupling_profile, ChainSpec, Scenario};
use ssh_channels::circuit::{detection_spectrum, resonant_frequency, DriveVector};

fn main() -> ssh_channels::Result<()> {
    let spec = ChainSpec::new(10)?;
    let n = spec.n_sites();
    let h = build_hamiltonian(&spec, &coupling_profile(&Scenario::beam_splitter(), 0.15 * PI));
    let kappa = 0.05;
    for site in [n - 1, 0] {
        let omega = resonant_frequency(&h, site)?;
        let s = detection_spectrum(&h, &DriveVector::single(n, site, 1.0)?, &[omega], kappa)?;
        let p = &s.populations[0];
        let total: f64 = p.iter().sum();
        println!(
            "drive site {:2}: resonance {omega:+.5}, p1 {:.3}, p2 {:.3}, p_last {:.3} (fractions)",
            site + 1,
            p[0] / total,
            p[1] / total,
            p[n - 1] / total,
        );
    }
    Ok(())
}
