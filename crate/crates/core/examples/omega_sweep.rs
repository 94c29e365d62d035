//! Beam-splitter fidelity against drive rate.

use ssh_channels::chain::{ChainSpec, Scenario};
use ssh_channels::disorder::splitter_task;
use ssh_channels::dynamics::{log_spaced, omega_sweep, IntegratorConfig};

fn main() -> ssh_channels::Result<()> {
    let spec = ChainSpec::new(10)?;
    let (psi0, target) = splitter_task(&spec)?;
    let omegas = log_spaced(1e-5, 1e-2, 7)?;
    let rows = omega_sweep(&spec, &Scenario::beam_splitter(), &omegas, &psi0, &target, &IntegratorConfig::default())?;
    for r in rows {
        println!("{:.2e}  {:.6}", r.omega, r.fidelity_distribution);
    }
    Ok(())
}
