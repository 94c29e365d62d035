//! The detuning recipe reproduces the beam-splitter lattice.

use std::f64::consts::PI;

use ssh_channels::chain::ChainSpec;
use ssh_channels::circuit::{verify_mapping, verify_mapping_with, CircuitParams, SignConvention};

fn main() -> ssh_channels::Result<()> {
    let spec = ChainSpec::new(10)?;
    let grid: Vec<f64> = (0..101).map(|k| 2.0 * PI * k as f64 / 100.0).collect();
    let r = verify_mapping(&spec, &grid)?;
    println!("absorbed sign: max |ΔH| = {:.1e} over {} points", r.max_abs_diff, r.points);
    let literal = verify_mapping_with(&spec, &grid, |th| CircuitParams::beam_splitter_recipe(th).with_sign(SignConvention::Literal))?;
    println!("literal sign:  max |ΔH| = {:.3} at θ = {:.3}", literal.max_abs_diff, literal.worst_theta);
    Ok(())
}
