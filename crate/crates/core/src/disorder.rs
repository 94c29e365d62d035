//! Quenched disorder `W δ`, `δ ~ U[-0.5, 0.5]`, and sample-averaged
//! beam-splitter fidelity.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{BondCouplings, ChainSpec, HamiltonianPath, Scenario};
use crate::dynamics::{distribution_fidelity, evolve_final, DriveSchedule, IntegratorConfig, StateVector};
use crate::error::{Error, Result};
use crate::spectral::SiteDistribution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    /// Every site potential.
    Onsite,
    /// Every nearest-neighbour bond, t1 and t2 alike.
    Nn,
    /// Every a–a bond.
    Nnn,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::Onsite, Channel::Nn, Channel::Nnn];

    pub fn name(&self) -> &'static str {
        match self {
            Channel::Onsite => "onsite",
            Channel::Nn => "nn",
            Channel::Nnn => "nnn",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Channel::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::config("channel", format!("unknown channel `{s}` (expected onsite, nn or nnn)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisorderConfig {
    pub strength: f64,
    pub channel: Channel,
    pub samples: usize,
    pub seed: u64,
}

impl DisorderConfig {
    pub fn new(strength: f64, channel: Channel, samples: usize, seed: u64) -> Result<Self> {
        let cfg = DisorderConfig { strength, channel, samples, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.strength >= 0.0) || !self.strength.is_finite() {
            return Err(Error::config("strength", format!("must be finite and >= 0, got {}", self.strength)));
        }
        if self.samples == 0 {
            return Err(Error::config("samples", "must be at least 1"));
        }
        Ok(())
    }
}

/// Independent stream for one sample: results do not depend on the order in
/// which samples are evaluated.
fn sample_rng(seed: u64, sample: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample);
    rng
}

/// The offsets `W δ` of one sample, as bond couplings that are zero outside
/// the chosen channel.
pub fn draw_offsets(spec: &ChainSpec, cfg: &DisorderConfig, sample: u64) -> Result<BondCouplings> {
    cfg.validate()?;
    let mut rng = sample_rng(cfg.seed, sample);
    let mut offsets = BondCouplings::zeros(spec);
    let target = match cfg.channel {
        Channel::Onsite => &mut offsets.onsite,
        Channel::Nn => &mut offsets.nn,
        Channel::Nnn => &mut offsets.nnn_a,
    };
    for x in target.iter_mut() {
        *x = cfg.strength * rng.random_range(-0.5..=0.5);
    }
    Ok(offsets)
}

/// `c` plus the quenched offsets of `sample`.
pub fn perturb(c: &BondCouplings, cfg: &DisorderConfig, sample: u64) -> Result<BondCouplings> {
    let spec = ChainSpec::new(c.n_cells())?;
    let d = draw_offsets(&spec, cfg, sample)?;
    let add = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
    Ok(BondCouplings {
        onsite: add(&c.onsite, &d.onsite),
        nn: add(&c.nn, &d.nn),
        nnn_a: add(&c.nnn_a, &d.nnn_a),
        nnn_b: add(&c.nnn_b, &d.nnn_b),
    })
}

/// `log10 W` from -3 to 0 in steps of 0.25.
pub fn default_strengths() -> Vec<f64> {
    (0..=12).map(|k| 10f64.powf(-3.0 + 0.25 * k as f64)).collect()
}

/// Settings shared by every point of a disorder sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub omega: f64,
    pub samples: usize,
    pub seed: u64,
    pub integrator: IntegratorConfig,
}

impl Default for SweepSettings {
    fn default() -> Self {
        SweepSettings { omega: 1e-5, samples: 100, seed: 0, integrator: IntegratorConfig::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisorderRow {
    pub channel: Channel,
    pub strength: f64,
    pub log10w: f64,
    pub mean_fidelity: f64,
    pub stddev_fidelity: f64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisorderSweep {
    pub clean_fidelity: f64,
    pub rows: Vec<DisorderRow>,
}

/// Beam-splitter task: start on the last site, aim for equal weight on the
/// first two.
pub fn splitter_task(spec: &ChainSpec) -> Result<(StateVector, SiteDistribution)> {
    let psi0 = StateVector::basis(spec.n_sites(), spec.n_sites() - 1)?;
    let mut q = vec![0.0; spec.n_sites()];
    q[0] = 0.5;
    q[1] = 0.5;
    Ok((psi0, SiteDistribution::new(q)?))
}

/// Distribution fidelity of one disordered full-cycle run.
pub fn sample_fidelity(
    spec: &ChainSpec,
    path: &HamiltonianPath,
    cfg: &DisorderConfig,
    sample: u64,
    settings: &SweepSettings,
) -> Result<f64> {
    let offsets = draw_offsets(spec, cfg, sample)?.to_hamiltonian();
    let disordered = path.clone().with_offset(&offsets);
    let (psi0, target) = splitter_task(spec)?;
    let schedule = DriveSchedule::full_cycle(settings.omega)?;
    let psi = evolve_final(&disordered, &schedule, &psi0, &settings.integrator)?;
    Ok(distribution_fidelity(&psi, &target))
}

/// Mean and spread of the fidelity for every `(channel, W)` pair, rows in
/// channel-major order.
pub fn disorder_sweep(
    spec: &ChainSpec,
    scenario: &Scenario,
    strengths: &[f64],
    channels: &[Channel],
    settings: &SweepSettings,
) -> Result<DisorderSweep> {
    if strengths.is_empty() || channels.is_empty() {
        return Err(Error::config("strengths", "sweep needs at least one strength and one channel"));
    }
    if strengths.iter().any(|w| !(*w > 0.0) || !w.is_finite()) || strengths.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::config("strengths", "must be positive and strictly ascending"));
    }
    if settings.samples == 0 {
        return Err(Error::config("samples", "must be at least 1"));
    }
    scenario.validate()?;
    let path = HamiltonianPath::new(spec, scenario);
    let (psi0, target) = splitter_task(spec)?;
    let clean = evolve_final(&path, &DriveSchedule::full_cycle(settings.omega)?, &psi0, &settings.integrator)?;
    let clean_fidelity = distribution_fidelity(&clean, &target);

    let points: Vec<(Channel, f64)> =
        channels.iter().flat_map(|&c| strengths.iter().map(move |&w| (c, w))).collect();
    let jobs: Vec<(usize, u64)> =
        (0..points.len()).flat_map(|p| (0..settings.samples as u64).map(move |s| (p, s))).collect();
    let fidelities = jobs
        .par_iter()
        .map(|&(p, s)| {
            let (channel, strength) = points[p];
            let cfg = DisorderConfig::new(strength, channel, settings.samples, settings.seed)?;
            sample_fidelity(spec, &path, &cfg, s, settings)
        })
        .collect::<Result<Vec<f64>>>()?;

    let rows = points
        .iter()
        .zip(fidelities.chunks(settings.samples))
        .map(|(&(channel, strength), f)| {
            let (mean, stddev) = mean_stddev(f);
            DisorderRow {
                channel,
                strength,
                log10w: strength.log10(),
                mean_fidelity: mean,
                stddev_fidelity: stddev,
                samples: settings.samples,
                seed: settings.seed,
            }
        })
        .collect();
    Ok(DisorderSweep { clean_fidelity, rows })
}

/// Mean and unbiased standard deviation (zero for a single value).
fn mean_stddev(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    if v.len() < 2 {
        return (mean, 0.0);
    }
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::coupling_profile;

    fn spec() -> ChainSpec {
        ChainSpec::new(4).unwrap()
    }

    #[test]
    fn channel_parsing() {
        assert_eq!("nnn".parse::<Channel>().unwrap(), Channel::Nnn);
        assert!("t3".parse::<Channel>().is_err());
    }

    #[test]
    fn zero_strength_leaves_couplings_unchanged() {
        let c = BondCouplings::uniform(&spec(), &coupling_profile(&Scenario::beam_splitter(), 0.4));
        for ch in Channel::ALL {
            let cfg = DisorderConfig::new(0.0, ch, 1, 9).unwrap();
            assert_eq!(perturb(&c, &cfg, 0).unwrap(), c);
        }
    }

    #[test]
    fn offsets_touch_only_their_channel() {
        let s = spec();
        let on = draw_offsets(&s, &DisorderConfig::new(1.0, Channel::Onsite, 1, 3).unwrap(), 0).unwrap();
        assert!(on.onsite.iter().all(|x| *x != 0.0 && x.abs() <= 0.5));
        assert!(on.nn.iter().chain(&on.nnn_a).chain(&on.nnn_b).all(|x| *x == 0.0));
        let nnn = draw_offsets(&s, &DisorderConfig::new(1.0, Channel::Nnn, 1, 3).unwrap(), 0).unwrap();
        assert_eq!(nnn.nnn_a.len(), 3);
        assert!(nnn.nnn_b.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn streams_are_reproducible_and_independent() {
        let s = spec();
        let cfg = DisorderConfig::new(0.1, Channel::Nn, 2, 42).unwrap();
        assert_eq!(draw_offsets(&s, &cfg, 0).unwrap(), draw_offsets(&s, &cfg, 0).unwrap());
        assert_ne!(draw_offsets(&s, &cfg, 0).unwrap(), draw_offsets(&s, &cfg, 1).unwrap());
    }

    #[test]
    fn draws_cover_the_interval_uniformly() {
        let s = ChainSpec::new(50).unwrap();
        let cfg = DisorderConfig::new(1.0, Channel::Onsite, 1, 1).unwrap();
        let mut all = Vec::new();
        for k in 0..100 {
            all.extend(draw_offsets(&s, &cfg, k).unwrap().onsite);
        }
        let (mean, sd) = mean_stddev(&all);
        assert!(mean.abs() < 0.01, "{mean}");
        // uniform on [-1/2, 1/2] has variance 1/12
        assert!((sd - (1.0f64 / 12.0).sqrt()).abs() < 0.005, "{sd}");
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(DisorderConfig::new(-0.1, Channel::Nn, 1, 0).is_err());
        assert!(DisorderConfig::new(0.1, Channel::Nn, 0, 0).is_err());
        let st = SweepSettings { samples: 1, ..Default::default() };
        assert!(disorder_sweep(&spec(), &Scenario::beam_splitter(), &[0.2, 0.1], &Channel::ALL, &st).is_err());
        assert!(disorder_sweep(&spec(), &Scenario::beam_splitter(), &[], &Channel::ALL, &st).is_err());
    }

    #[test]
    fn default_grid() {
        let w = default_strengths();
        assert_eq!(w.len(), 13);
        assert!((w[0] - 1e-3).abs() < 1e-18 && (w[12] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_clean_sample_reproduces_clean_run() {
        let s = spec();
        let settings = SweepSettings {
            omega: 1e-2,
            samples: 1,
            seed: 5,
            integrator: IntegratorConfig { dtheta_step: 1e-2, snapshot_count: 10, ..Default::default() },
        };
        let path = HamiltonianPath::new(&s, &Scenario::beam_splitter());
        let cfg = DisorderConfig::new(0.0, Channel::Nn, 1, 5).unwrap();
        let f = sample_fidelity(&s, &path, &cfg, 0, &settings).unwrap();
        let sweep = disorder_sweep(&s, &Scenario::beam_splitter(), &[0.5], &[Channel::Nn], &settings).unwrap();
        assert_eq!(f, sweep.clean_fidelity);
        assert_eq!(sweep.rows[0].stddev_fidelity, 0.0);
    }
}
