//! Periodically modulated SSH chains: spectra, adiabatic transfer channels,
//! disorder robustness and the circuit-QED realisation.

pub mod chain;
pub mod circuit;
pub mod disorder;
pub mod dynamics;
pub mod error;
pub mod output;
pub mod runner;
pub mod spectral;

pub use error::{Error, Result};
