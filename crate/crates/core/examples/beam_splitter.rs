//! Splitting an excitation on the last site equally over the first two.

use ssh_channels::chain::{ChainSpec, HamiltonianPath, Scenario};
use ssh_channels::disorder::splitter_task;
use ssh_channels::dynamics::{distribution_fidelity, evolve_final, DriveSchedule, IntegratorConfig};

fn main() -> ssh_channels::Result<()> {
    let spec = ChainSpec::new(10)?;
    let (psi0, target) = splitter_task(&spec)?;
    let path = HamiltonianPath::new(&spec, &Scenario::beam_splitter());
    let psi = evolve_final(&path, &DriveSchedule::full_cycle(1e-5)?, &psi0, &IntegratorConfig::default())?;
    let p = psi.populations();
    println!("p1 = {:.6}  p2 = {:.6}  rest = {:.2e}", p[0], p[1], p[2..].iter().sum::<f64>());
    println!("distribution fidelity {:.8}", distribution_fidelity(&psi, &target));
    Ok(())
}
