//! Disorder-averaged beam-splitter fidelity on a short strength grid.
//! Pass a sample count as the first argument (default 8).

use ssh_channels::chain::{ChainSpec, Scenario};
use ssh_channels::disorder::{disorder_sweep, Channel, SweepSettings};

fn main() -> ssh_channels::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let spec = ChainSpec::new(10)?;
    let settings = SweepSettings { omega: 1e-4, samples, ..Default::default() };
    let sweep = disorder_sweep(&spec, &Scenario::beam_splitter(), &[0.01, 0.1, 1.0], &Channel::ALL, &settings)?;
    println!("clean fidelity {:.6}", sweep.clean_fidelity);
    for r in &sweep.rows {
        println!("{:6}  W = {:<5}  {:.4} ± {:.4}", r.channel, r.strength, r.mean_fidelity, r.stddev_fidelity);
    }
    Ok(())
}
