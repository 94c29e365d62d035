//! Spectrum of the bare chain over one cycle, with the gap-state energies.

use std::f64::consts::PI;

use ssh_channels::chain::{ChainSpec, Scenario};
use ssh_channels::spectral::spectrum_scan;

fn main() -> ssh_channels::Result<()> {
    let spec = ChainSpec::new(10)?;
    let grid: Vec<f64> = (0..=20).map(|k| PI * k as f64 / 10.0).collect();
    let scan = spectrum_scan(&spec, &Scenario::bare_ssh(), &grid)?;
    println!("theta/pi  E_lower          E_upper");
    for row in &scan.rows {
        println!("{:8.2}  {:+.6e}  {:+.6e}", row.theta / PI, row.gap.lower_energy, row.gap.upper_energy);
    }
    Ok(())
}
