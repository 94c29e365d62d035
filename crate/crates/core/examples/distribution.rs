//! Where the upper gap state of the Rice-Mele chain lives, compared with the
//! analytic edge profile.

use std::f64::consts::PI;

use ssh_channels::chain::{build_hamiltonian, coupling_profile, ChainSpec, Scenario};
use ssh_channels::spectral::{analytic_edge_states, eigendecompose, gap_state_select};

fn main() -> ssh_channels::Result<()> {
    let spec = ChainSpec::new(10)?;
    let scenario = Scenario::rice_mele(1.0);
    for theta in [0.15 * PI, 1.85 * PI] {
        let c = coupling_profile(&scenario, theta);
        let es = eigendecompose(&build_hamiltonian(&spec, &c))?;
        let gap = gap_state_select(&es);
        let upper = es.distribution(gap.upper_index);
        let (left, _) = analytic_edge_states(&c, &spec)?;
        println!(
            "theta = {:.2}π: peak at site {}, p = {:.4}, overlap with left ansatz {:.6}",
            theta / PI,
            upper.peak_site() + 1,
            upper.probabilities[upper.peak_site()],
            left.overlap(&es.vector(gap.upper_index)),
        );
    }
    Ok(())
}
