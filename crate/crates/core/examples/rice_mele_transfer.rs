//! End-to-end transfer through the Rice-Mele channel.

use ssh_channels::chain::{ChainSpec, Scenario};
use ssh_channels::dynamics::{evolve, transfer_fidelity, DriveSchedule, IntegratorConfig, StateVector};

fn main() -> ssh_channels::Result<()> {
    let spec = ChainSpec::new(10)?;
    let n = spec.n_sites();
    let psi0 = StateVector::basis(n, 0)?;
    let traj = evolve(&spec, &Scenario::rice_mele(1.0), &DriveSchedule::full_cycle(5e-4)?, &psi0, &IntegratorConfig::default())?;
    for k in (0..traj.len()).step_by(50).chain([traj.len() - 1]) {
        let p = traj.populations(k);
        println!("t = {:9.1}  p_first = {:.4}  p_last = {:.4}", traj.times[k], p[0], p[n - 1]);
    }
    let f = transfer_fidelity(traj.final_state(), &StateVector::basis(n, n - 1)?);
    println!("fidelity {f:.6}");
    Ok(())
}
