//! TOML run configuration.
//!
//! A config names one command, the chain, the scenario and at most the one
//! block that command reads. Missing block entries take their defaults;
//! [`RunConfig::resolve`] fills them in so that equivalent configs share one
//! canonical form, and therefore one hash.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chain::{ChainSpec, Scenario, ScenarioTag};
use crate::circuit::SignConvention;
use crate::disorder::Channel;
use crate::dynamics::{Integrator, IntegratorConfig, TargetMode};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spectrum,
    Distribution,
    Evolve,
    SweepOmega,
    Disorder,
    Detect,
    VerifyMap,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Spectrum,
        Command::Distribution,
        Command::Evolve,
        Command::SweepOmega,
        Command::Disorder,
        Command::Detect,
        Command::VerifyMap,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Distribution => "distribution",
            Command::Evolve => "evolve",
            Command::SweepOmega => "sweep-omega",
            Command::Disorder => "disorder",
            Command::Detect => "detect",
            Command::VerifyMap => "verify-map",
        }
    }

    /// Config block this command reads.
    pub fn block(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Distribution => "distribution",
            Command::Evolve => "evolve",
            Command::SweepOmega => "sweep_omega",
            Command::Disorder => "disorder",
            Command::Detect => "detect",
            Command::VerifyMap => "verify_map",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainBlock {
    pub n_cells: i64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioBlock {
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strength: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_t1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_t2: Option<f64>,
}

/// θ grid in units of π.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub theta_start_pi: Option<f64>,
    pub theta_end_pi: Option<f64>,
    pub points: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionBlock {
    pub theta_start_pi: Option<f64>,
    pub theta_end_pi: Option<f64>,
    pub points: Option<i64>,
    /// `upper` or `lower` gap state.
    pub state: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorBlock {
    pub dtheta_step: Option<f64>,
    pub snapshot_count: Option<i64>,
    pub integrator: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveBlock {
    pub omega: Option<f64>,
    pub theta_start_pi: Option<f64>,
    pub theta_end_pi: Option<f64>,
    /// 1-based site of the initial basis state.
    pub initial_site: Option<i64>,
    /// 1-based sites sharing the target population equally.
    pub target_sites: Option<Vec<i64>>,
    #[serde(flatten)]
    pub integrator: IntegratorBlock,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub omega_count: Option<i64>,
    pub initial_site: Option<i64>,
    pub target_sites: Option<Vec<i64>>,
    /// `overlap` or `distribution`; reported first on stdout.
    pub mode: Option<String>,
    #[serde(flatten)]
    pub integrator: IntegratorBlock,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisorderBlock {
    pub log10w_min: Option<f64>,
    pub log10w_max: Option<f64>,
    pub log10w_step: Option<f64>,
    pub channels: Option<Vec<String>>,
    pub samples: Option<i64>,
    pub seed: Option<i64>,
    pub omega: Option<f64>,
    #[serde(flatten)]
    pub integrator: IntegratorBlock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveEntry {
    /// 1-based.
    pub site: i64,
    #[serde(default = "unit")]
    pub amplitude: f64,
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectBlock {
    pub theta_pi: Option<f64>,
    pub kappa: Option<f64>,
    pub drive: Option<Vec<DriveEntry>>,
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub points: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyBlock {
    pub theta_start_pi: Option<f64>,
    pub theta_end_pi: Option<f64>,
    pub points: Option<i64>,
    /// `absorbed` or `literal`.
    pub sign: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub chain: ChainBlock,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<ScenarioBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<GridBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<DistributionBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evolve: Option<EvolveBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_omega: Option<SweepBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disorder: Option<DisorderBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detect: Option<DetectBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify_map: Option<VerifyBlock>,
}

impl FromStr for RunConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            let key = unknown_field(&msg).unwrap_or_else(|| "config".to_string());
            Error::config(key, msg)
        })
    }
}

/// Pull the offending name out of serde's "unknown field `x`" message.
fn unknown_field(msg: &str) -> Option<String> {
    let rest = msg.strip_prefix("unknown field `")?;
    Some(rest[..rest.find('`')?].to_string())
}

/// A fully validated run, ready to execute.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub spec: ChainSpec,
    pub scenario: Scenario,
    pub task: Task,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Spectrum { grid: Vec<f64> },
    Distribution { grid: Vec<f64>, upper: bool },
    Evolve { omega: f64, theta_start: f64, theta_end: f64, initial: usize, target: Vec<usize>, integrator: IntegratorConfig },
    SweepOmega { omegas: Vec<f64>, initial: usize, target: Vec<usize>, mode: TargetMode, integrator: IntegratorConfig },
    Disorder { strengths: Vec<f64>, channels: Vec<Channel>, samples: usize, seed: u64, omega: f64, integrator: IntegratorConfig },
    Detect { theta: f64, kappa: f64, drive: Vec<(usize, f64)>, omegas: Vec<f64> },
    VerifyMap { grid: Vec<f64>, sign: SignConvention },
}

fn positive_int(key: &str, v: i64, min: i64) -> Result<usize> {
    if v < min {
        return Err(Error::config(key, format!("must be >= {min}, got {v}")));
    }
    usize::try_from(v).map_err(|_| Error::config(key, "out of range"))
}

fn finite(key: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::config(key, "must be finite"))
    }
}

fn positive(key: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::config(key, format!("must be positive and finite, got {v}")))
    }
}

fn site(key: &str, v: i64, n_sites: usize) -> Result<usize> {
    if v < 1 || v as u64 > n_sites as u64 {
        return Err(Error::config(key, format!("site {v} outside 1..={n_sites}")));
    }
    Ok(v as usize - 1)
}

/// Uniform grid in units of π, endpoints included.
fn pi_grid(block: &str, start: f64, end: f64, points: usize) -> Result<Vec<f64>> {
    if !(end > start) {
        return Err(Error::config(format!("{block}.theta_end_pi"), "must exceed theta_start_pi"));
    }
    if start < 0.0 || end > 2.0 {
        return Err(Error::config(format!("{block}.theta_start_pi"), "grid must lie within [0, 2] (units of π)"));
    }
    Ok((0..points).map(|k| PI * (start + (end - start) * k as f64 / (points - 1) as f64)).collect())
}

impl IntegratorBlock {
    fn resolve(&mut self) {
        let d = IntegratorConfig::default();
        self.dtheta_step.get_or_insert(d.dtheta_step);
        self.snapshot_count.get_or_insert(d.snapshot_count as i64);
        self.integrator.get_or_insert_with(|| "magnus".to_string());
    }

    fn plan(&self, block: &str) -> Result<IntegratorConfig> {
        let integrator = match self.integrator.as_deref().unwrap_or("magnus") {
            "magnus" => Integrator::Magnus,
            "midpoint" => Integrator::Midpoint,
            other => {
                return Err(Error::config(format!("{block}.integrator"), format!("unknown integrator `{other}`")))
            }
        };
        let cfg = IntegratorConfig {
            dtheta_step: finite(&format!("{block}.dtheta_step"), self.dtheta_step.unwrap_or(1e-3))?,
            snapshot_count: positive_int(&format!("{block}.snapshot_count"), self.snapshot_count.unwrap_or(400), 2)?,
            integrator,
        };
        cfg.validate().map_err(|e| match e {
            Error::Config { key, reason } => Error::config(format!("{block}.{key}"), reason),
            other => other,
        })?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    /// Canonical TOML text: the resolved config re-serialised.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::config("config", format!("cannot serialise: {e}")))
    }

    /// Override the disorder seed.
    pub fn with_seed(mut self, seed: u64) -> Result<Self> {
        if self.command != Command::Disorder {
            return Err(Error::config("seed", format!("`{}` does not use a seed", self.command)));
        }
        let seed = i64::try_from(seed).map_err(|_| Error::config("seed", "must not exceed 2^63 - 1"))?;
        self.disorder.get_or_insert_with(Default::default).seed = Some(seed);
        Ok(self)
    }

    /// Fill every default so that equivalent configs become identical.
    pub fn resolve(mut self) -> Result<Self> {
        let used = self.command.block();
        let present = [
            ("spectrum", self.spectrum.is_some()),
            ("distribution", self.distribution.is_some()),
            ("evolve", self.evolve.is_some()),
            ("sweep_omega", self.sweep_omega.is_some()),
            ("disorder", self.disorder.is_some()),
            ("detect", self.detect.is_some()),
            ("verify_map", self.verify_map.is_some()),
        ];
        for (name, is) in present {
            if is && name != used {
                return Err(Error::config(name, format!("block is not read by `{}`", self.command)));
            }
        }

        if self.command == Command::VerifyMap {
            if self.scenario.is_some() {
                return Err(Error::config("scenario", "`verify-map` always compares against beam_splitter"));
            }
        } else {
            let sc = self.scenario.as_mut().ok_or_else(|| Error::config("scenario", "block is required"))?;
            let tag: ScenarioTag = sc.tag.parse()?;
            let uses_strength = matches!(tag, ScenarioTag::RiceMele | ScenarioTag::StaggeredNnn);
            let uses_fixed = tag == ScenarioTag::FixedNnn;
            if uses_strength {
                sc.strength.get_or_insert(1.0);
            } else if sc.strength.is_some() {
                return Err(Error::config("scenario.strength", format!("not used by `{tag}`")));
            }
            if uses_fixed {
                sc.fixed_t1.get_or_insert(0.0);
                sc.fixed_t2.get_or_insert(0.0);
            } else if sc.fixed_t1.is_some() || sc.fixed_t2.is_some() {
                return Err(Error::config("scenario.fixed_t1", format!("not used by `{tag}`")));
            }
        }

        let n_sites = 2 * self.chain.n_cells.max(0);
        match self.command {
            Command::Spectrum => {
                let b = self.spectrum.get_or_insert_with(Default::default);
                b.theta_start_pi.get_or_insert(0.0);
                b.theta_end_pi.get_or_insert(2.0);
                b.points.get_or_insert(201);
            }
            Command::Distribution => {
                let b = self.distribution.get_or_insert_with(Default::default);
                b.theta_start_pi.get_or_insert(0.0);
                b.theta_end_pi.get_or_insert(2.0);
                b.points.get_or_insert(201);
                b.state.get_or_insert_with(|| "upper".to_string());
            }
            Command::Evolve => {
                let b = self.evolve.get_or_insert_with(Default::default);
                if b.omega.is_none() {
                    return Err(Error::config("evolve.omega", "is required"));
                }
                b.theta_start_pi.get_or_insert(0.0);
                b.theta_end_pi.get_or_insert(2.0);
                b.initial_site.get_or_insert(1);
                b.target_sites.get_or_insert_with(|| vec![n_sites]);
                b.integrator.resolve();
            }
            Command::SweepOmega => {
                let b = self.sweep_omega.get_or_insert_with(Default::default);
                b.omega_min.get_or_insert(1e-6);
                b.omega_max.get_or_insert(1e-2);
                b.omega_count.get_or_insert(25);
                b.initial_site.get_or_insert(1);
                b.target_sites.get_or_insert_with(|| vec![n_sites]);
                b.mode.get_or_insert_with(|| "overlap".to_string());
                b.integrator.resolve();
            }
            Command::Disorder => {
                let b = self.disorder.get_or_insert_with(Default::default);
                b.log10w_min.get_or_insert(-3.0);
                b.log10w_max.get_or_insert(0.0);
                b.log10w_step.get_or_insert(0.25);
                b.channels.get_or_insert_with(|| Channel::ALL.iter().map(|c| c.name().to_string()).collect());
                b.samples.get_or_insert(100);
                b.seed.get_or_insert(0);
                b.omega.get_or_insert(1e-5);
                b.integrator.resolve();
            }
            Command::Detect => {
                let b = self.detect.get_or_insert_with(Default::default);
                b.theta_pi.get_or_insert(0.15);
                b.kappa.get_or_insert(0.05);
                b.drive.get_or_insert_with(|| vec![DriveEntry { site: n_sites, amplitude: 1.0 }]);
                b.omega_min.get_or_insert(-5.0);
                b.omega_max.get_or_insert(5.0);
                b.points.get_or_insert(2001);
            }
            Command::VerifyMap => {
                let b = self.verify_map.get_or_insert_with(Default::default);
                b.theta_start_pi.get_or_insert(0.0);
                b.theta_end_pi.get_or_insert(2.0);
                b.points.get_or_insert(101);
                b.sign.get_or_insert_with(|| "absorbed".to_string());
            }
        }
        Ok(self)
    }

    /// Validate every value and produce the typed plan.
    pub fn plan(&self) -> Result<Plan> {
        let n_cells = positive_int("chain.n_cells", self.chain.n_cells, 2)?;
        let spec = ChainSpec::new(n_cells)?;
        let n = spec.n_sites();
        let scenario = match &self.scenario {
            Some(sc) => {
                let tag: ScenarioTag = sc.tag.parse()?;
                let s = Scenario {
                    tag,
                    strength: finite("scenario.strength", sc.strength.unwrap_or(1.0))?,
                    fixed_t1: finite("scenario.fixed_t1", sc.fixed_t1.unwrap_or(0.0))?,
                    fixed_t2: finite("scenario.fixed_t2", sc.fixed_t2.unwrap_or(0.0))?,
                };
                s.validate()?;
                s
            }
            None => Scenario::beam_splitter(),
        };
        let sites = |key: &str, v: &[i64]| -> Result<Vec<usize>> {
            if v.is_empty() {
                return Err(Error::config(key, "needs at least one site"));
            }
            let out = v.iter().map(|&s| site(key, s, n)).collect::<Result<Vec<_>>>()?;
            let mut sorted = out.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != out.len() {
                return Err(Error::config(key, "sites must be distinct"));
            }
            Ok(out)
        };
        let missing = |key: &str| Error::config(key, "missing after resolve");

        let task = match self.command {
            Command::Spectrum => {
                let b = self.spectrum.as_ref().ok_or_else(|| missing("spectrum"))?;
                let points = positive_int("spectrum.points", b.points.unwrap_or(201), 2)?;
                Task::Spectrum {
                    grid: pi_grid("spectrum", b.theta_start_pi.unwrap_or(0.0), b.theta_end_pi.unwrap_or(2.0), points)?,
                }
            }
            Command::Distribution => {
                let b = self.distribution.as_ref().ok_or_else(|| missing("distribution"))?;
                let points = positive_int("distribution.points", b.points.unwrap_or(201), 2)?;
                let upper = match b.state.as_deref().unwrap_or("upper") {
                    "upper" => true,
                    "lower" => false,
                    other => {
                        return Err(Error::config("distribution.state", format!("expected upper or lower, got `{other}`")))
                    }
                };
                Task::Distribution {
                    grid: pi_grid("distribution", b.theta_start_pi.unwrap_or(0.0), b.theta_end_pi.unwrap_or(2.0), points)?,
                    upper,
                }
            }
            Command::Evolve => {
                let b = self.evolve.as_ref().ok_or_else(|| missing("evolve"))?;
                let omega = positive("evolve.omega", b.omega.ok_or_else(|| missing("evolve.omega"))?)?;
                let theta_start = PI * finite("evolve.theta_start_pi", b.theta_start_pi.unwrap_or(0.0))?;
                let theta_end = PI * finite("evolve.theta_end_pi", b.theta_end_pi.unwrap_or(2.0))?;
                if !(theta_end > theta_start) {
                    return Err(Error::config("evolve.theta_end_pi", "must exceed theta_start_pi"));
                }
                Task::Evolve {
                    omega,
                    theta_start,
                    theta_end,
                    initial: site("evolve.initial_site", b.initial_site.unwrap_or(1), n)?,
                    target: sites("evolve.target_sites", b.target_sites.as_deref().unwrap_or(&[n as i64]))?,
                    integrator: b.integrator.plan("evolve")?,
                }
            }
            Command::SweepOmega => {
                let b = self.sweep_omega.as_ref().ok_or_else(|| missing("sweep_omega"))?;
                let lo = positive("sweep_omega.omega_min", b.omega_min.unwrap_or(1e-6))?;
                let hi = positive("sweep_omega.omega_max", b.omega_max.unwrap_or(1e-2))?;
                if !(hi > lo) {
                    return Err(Error::config("sweep_omega.omega_max", "must exceed omega_min"));
                }
                let count = positive_int("sweep_omega.omega_count", b.omega_count.unwrap_or(25), 2)?;
                let mode = match b.mode.as_deref().unwrap_or("overlap") {
                    "overlap" => TargetMode::Overlap,
                    "distribution" => TargetMode::Distribution,
                    other => {
                        return Err(Error::config("sweep_omega.mode", format!("expected overlap or distribution, got `{other}`")))
                    }
                };
                Task::SweepOmega {
                    omegas: crate::dynamics::log_spaced(lo, hi, count)?,
                    initial: site("sweep_omega.initial_site", b.initial_site.unwrap_or(1), n)?,
                    target: sites("sweep_omega.target_sites", b.target_sites.as_deref().unwrap_or(&[n as i64]))?,
                    mode,
                    integrator: b.integrator.plan("sweep_omega")?,
                }
            }
            Command::Disorder => {
                let b = self.disorder.as_ref().ok_or_else(|| missing("disorder"))?;
                let lo = finite("disorder.log10w_min", b.log10w_min.unwrap_or(-3.0))?;
                let hi = finite("disorder.log10w_max", b.log10w_max.unwrap_or(0.0))?;
                let step = positive("disorder.log10w_step", b.log10w_step.unwrap_or(0.25))?;
                if hi < lo {
                    return Err(Error::config("disorder.log10w_max", "must not be below log10w_min"));
                }
                // tolerate rounding in (hi - lo) / step
                let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
                let strengths = (0..count).map(|k| 10f64.powf(lo + step * k as f64)).collect();
                let names = b.channels.clone().unwrap_or_default();
                if names.is_empty() {
                    return Err(Error::config("disorder.channels", "needs at least one channel"));
                }
                let channels = names
                    .iter()
                    .map(|s| s.parse::<Channel>().map_err(|_| Error::config("disorder.channels", format!("unknown channel `{s}`"))))
                    .collect::<Result<Vec<_>>>()?;
                let seed = b.seed.unwrap_or(0);
                if seed < 0 {
                    return Err(Error::config("disorder.seed", "must be non-negative"));
                }
                Task::Disorder {
                    strengths,
                    channels,
                    samples: positive_int("disorder.samples", b.samples.unwrap_or(100), 1)?,
                    seed: seed as u64,
                    omega: positive("disorder.omega", b.omega.unwrap_or(1e-5))?,
                    integrator: b.integrator.plan("disorder")?,
                }
            }
            Command::Detect => {
                let b = self.detect.as_ref().ok_or_else(|| missing("detect"))?;
                let lo = finite("detect.omega_min", b.omega_min.unwrap_or(-5.0))?;
                let hi = finite("detect.omega_max", b.omega_max.unwrap_or(5.0))?;
                if !(hi > lo) {
                    return Err(Error::config("detect.omega_max", "must exceed omega_min"));
                }
                let points = positive_int("detect.points", b.points.unwrap_or(2001), 2)?;
                let drive_cfg = b.drive.clone().unwrap_or_default();
                if drive_cfg.is_empty() || drive_cfg.iter().all(|d| d.amplitude == 0.0) {
                    return Err(Error::config("detect.drive", "needs at least one non-zero amplitude"));
                }
                let drive = drive_cfg
                    .iter()
                    .map(|d| Ok((site("detect.drive.site", d.site, n)?, finite("detect.drive.amplitude", d.amplitude)?)))
                    .collect::<Result<Vec<_>>>()?;
                Task::Detect {
                    theta: PI * finite("detect.theta_pi", b.theta_pi.unwrap_or(0.15))?,
                    kappa: positive("detect.kappa", b.kappa.unwrap_or(0.05))?,
                    drive,
                    omegas: (0..points).map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64).collect(),
                }
            }
            Command::VerifyMap => {
                let b = self.verify_map.as_ref().ok_or_else(|| missing("verify_map"))?;
                let points = positive_int("verify_map.points", b.points.unwrap_or(101), 2)?;
                let sign = match b.sign.as_deref().unwrap_or("absorbed") {
                    "absorbed" => SignConvention::Absorbed,
                    "literal" => SignConvention::Literal,
                    other => {
                        return Err(Error::config("verify_map.sign", format!("expected absorbed or literal, got `{other}`")))
                    }
                };
                Task::VerifyMap {
                    grid: pi_grid("verify_map", b.theta_start_pi.unwrap_or(0.0), b.theta_end_pi.unwrap_or(2.0), points)?,
                    sign,
                }
            }
        };
        Ok(Plan { spec, scenario, task })
    }
}
