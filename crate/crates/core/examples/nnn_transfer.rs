//! Transfer driven by staggered next-nearest-neighbour hopping, at a few
//! drive rates. Slower drives transfer more.

use ssh_channels::chain::{ChainSpec, Scenario};
use ssh_channels::dynamics::{omega_sweep, IntegratorConfig, StateVector};
use ssh_channels::spectral::SiteDistribution;

fn main() -> ssh_channels::Result<()> {
    let spec = ChainSpec::new(10)?;
    let n = spec.n_sites();
    let mut q = vec![0.0; n];
    q[n - 1] = 1.0;
    let rows = omega_sweep(
        &spec,
        &Scenario::staggered_nnn(1.0),
        &[1e-3, 1e-4, 2e-5],
        &StateVector::basis(n, 0)?,
        &SiteDistribution::new(q)?,
        &IntegratorConfig::default(),
    )?;
    for r in rows {
        println!("omega = {:.0e}  fidelity = {:.4}", r.omega, r.fidelity_overlap);
    }
    Ok(())
}
