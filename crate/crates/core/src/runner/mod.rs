//! Config-driven runs: validate, compute, then write CSV tables and a JSON
//! manifest named by the hash of the resolved config.
//!
//! ```no_run
//! use ssh_channels::runner::{self, RunConfig};
//!
//! let cfg = runner::presets::load("fig6d")?;
//! let out = runner::execute(cfg)?;
//! out.write(std::path::Path::new("out"))?;
//! # Ok::<(), ssh_channels::Error>(())
//! ```

pub mod config;
pub mod presets;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub use self::config::{Command, Plan, RunConfig, Task};
use crate::chain::{build_hamiltonian, coupling_profile, ChainSpec, Scenario};
use crate::circuit::{detection_spectrum, effective_hamiltonian, CircuitParams, DriveVector};
use crate::disorder::{disorder_sweep, SweepSettings};
use crate::dynamics::{evolve, fidelities, omega_sweep, DriveSchedule, StateVector, C64};
use crate::error::{Error, Result};
use crate::output;
use crate::spectral::{spectrum_scan, SiteDistribution};

/// One output table.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub file_name: String,
    pub bytes: Vec<u8>,
}

/// A finished computation, not yet on disk.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub command: Command,
    /// First 16 hex digits of the SHA-256 of `config_toml`.
    pub hash: String,
    pub config_toml: String,
    pub artifacts: Vec<Artifact>,
    pub summary: Value,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub config_hash: String,
    pub config_toml: String,
    pub version: String,
    pub wall_time_s: f64,
    pub outputs: Vec<String>,
    pub summary: Value,
}

impl Manifest {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        serde_json::from_str(&text).map_err(|e| Error::config("manifest", e.to_string()))
    }

    /// The config that produced this manifest.
    pub fn config(&self) -> Result<RunConfig> {
        RunConfig::parse(&self.config_toml)
    }
}

pub fn config_hash(canonical: &str) -> String {
    Sha256::digest(canonical.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Resolve, validate and compute. Nothing is written.
pub fn execute(cfg: RunConfig) -> Result<RunOutput> {
    let start = Instant::now();
    let cfg = cfg.resolve()?;
    let plan = cfg.plan()?;
    let config_toml = cfg.to_toml()?;
    let hash = config_hash(&config_toml);
    let stem = format!("{}-{hash}", cfg.command.name());
    let (tables, summary) = compute(&plan)?;
    let artifacts = tables
        .into_iter()
        .map(|(suffix, bytes)| Artifact { file_name: format!("{stem}{suffix}.csv"), bytes })
        .collect();
    Ok(RunOutput {
        command: cfg.command,
        hash,
        config_toml,
        artifacts,
        summary,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

impl RunOutput {
    pub fn manifest_name(&self) -> String {
        format!("{}-{}.json", self.command.name(), self.hash)
    }

    pub fn manifest(&self) -> Manifest {
        Manifest {
            command: self.command.name().to_string(),
            config_hash: self.hash.clone(),
            config_toml: self.config_toml.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_s: self.wall_time_s,
            outputs: self.artifacts.iter().map(|a| a.file_name.clone()).collect(),
            summary: self.summary.clone(),
        }
    }

    /// Write every table, then the manifest. Returns the paths written.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|e| Error::io(format!("creating {}", dir.display()), e))?;
        let mut written = Vec::new();
        for a in &self.artifacts {
            let path = dir.join(&a.file_name);
            fs::write(&path, &a.bytes).map_err(|e| Error::io(format!("writing {}", path.display()), e))?;
            written.push(path);
        }
        let path = dir.join(self.manifest_name());
        let text = serde_json::to_string_pretty(&self.manifest())
            .map_err(|e| Error::numeric(format!("manifest encoding failed: {e}")))?;
        fs::write(&path, text + "\n").map_err(|e| Error::io(format!("writing {}", path.display()), e))?;
        written.push(path);
        Ok(written)
    }
}

type Tables = Vec<(&'static str, Vec<u8>)>;

fn equal_weights(n: usize, sites: &[usize]) -> Result<SiteDistribution> {
    let mut q = vec![0.0; n];
    for &s in sites {
        q[s] = 1.0 / sites.len() as f64;
    }
    SiteDistribution::new(q)
}

fn finite_or_numeric(summary: Value, values: impl IntoIterator<Item = f64>) -> Result<Value> {
    if values.into_iter().all(f64::is_finite) {
        Ok(summary)
    } else {
        Err(Error::numeric("non-finite value in results"))
    }
}

fn compute(plan: &Plan) -> Result<(Tables, Value)> {
    let Plan { spec, scenario, task } = plan;
    let n = spec.n_sites();
    match task {
        Task::Spectrum { grid } => {
            let scan = spectrum_scan(spec, scenario, grid)?;
            let (mut main, mut upper, mut lower) = (Vec::new(), Vec::new(), Vec::new());
            output::write_spectrum(&mut main, &scan)?;
            output::write_distributions(&mut upper, scan.rows.iter().map(|r| (r.theta, &r.upper)))?;
            output::write_distributions(&mut lower, scan.rows.iter().map(|r| (r.theta, &r.lower)))?;
            let max_mid = scan
                .rows
                .iter()
                .map(|r| r.gap.lower_energy.abs().max(r.gap.upper_energy.abs()))
                .fold(0.0, f64::max);
            let summary = json!({ "points": grid.len(), "max_abs_gap_energy": max_mid });
            Ok((vec![("", main), ("-upper", upper), ("-lower", lower)], summary))
        }
        Task::Distribution { grid, upper } => {
            let scan = spectrum_scan(spec, scenario, grid)?;
            let mut buf = Vec::new();
            output::write_distributions(
                &mut buf,
                scan.rows.iter().map(|r| (r.theta, if *upper { &r.upper } else { &r.lower })),
            )?;
            let summary = json!({ "points": grid.len(), "state": if *upper { "upper" } else { "lower" } });
            Ok((vec![("", buf)], summary))
        }
        Task::Evolve { omega, theta_start, theta_end, initial, target, integrator } => {
            let schedule = DriveSchedule::new(*omega, *theta_start, *theta_end)?;
            let psi0 = StateVector::basis(n, *initial)?;
            let traj = evolve(spec, scenario, &schedule, &psi0, integrator)?;
            let q = equal_weights(n, target)?;
            let (f_overlap, f_dist) = fidelities(traj.final_state(), &q)?;
            let mut buf = Vec::new();
            output::write_trajectory(&mut buf, &traj)?;
            let final_pops = traj.final_state().populations();
            let summary = json!({
                "snapshots": traj.len(),
                "fidelity_overlap": f_overlap,
                "fidelity_distribution": f_dist,
                "final_populations": final_pops,
                "max_norm_defect": traj.max_norm_defect(),
            });
            let summary = finite_or_numeric(summary, final_pops.iter().copied().chain([f_overlap, f_dist]))?;
            Ok((vec![("", buf)], summary))
        }
        Task::SweepOmega { omegas, initial, target, mode, integrator } => {
            let psi0 = StateVector::basis(n, *initial)?;
            let q = equal_weights(n, target)?;
            let rows = omega_sweep(spec, scenario, omegas, &psi0, &q, integrator)?;
            let mut buf = Vec::new();
            output::write_sweep(&mut buf, &rows)?;
            let best = rows.iter().max_by(|a, b| a.fidelity(*mode).total_cmp(&b.fidelity(*mode))).expect("non-empty");
            let summary = json!({
                "points": rows.len(),
                "mode": mode,
                "best_omega": best.omega,
                "best_fidelity": best.fidelity(*mode),
            });
            let summary = finite_or_numeric(summary, rows.iter().map(|r| r.fidelity(*mode)))?;
            Ok((vec![("", buf)], summary))
        }
        Task::Disorder { strengths, channels, samples, seed, omega, integrator } => {
            let settings = SweepSettings { omega: *omega, samples: *samples, seed: *seed, integrator: *integrator };
            let sweep = disorder_sweep(spec, scenario, strengths, channels, &settings)?;
            let mut buf = Vec::new();
            output::write_disorder(&mut buf, &sweep.rows)?;
            let summary = json!({ "rows": sweep.rows.len(), "clean_fidelity": sweep.clean_fidelity });
            let summary = finite_or_numeric(summary, sweep.rows.iter().map(|r| r.mean_fidelity))?;
            Ok((vec![("", buf)], summary))
        }
        Task::Detect { theta, kappa, drive, omegas } => {
            let h = build_hamiltonian(spec, &coupling_profile(scenario, *theta));
            let mut amps = vec![C64::new(0.0, 0.0); n];
            for &(site, a) in drive {
                if amps[site] != C64::new(0.0, 0.0) {
                    return Err(Error::config("detect.drive.site", format!("site {} driven twice", site + 1)));
                }
                amps[site] = C64::new(a, 0.0);
            }
            let spectrum = detection_spectrum(&h, &DriveVector::new(amps)?, omegas, *kappa)?;
            let totals: Vec<f64> = spectrum.populations.iter().map(|p| p.iter().sum()).collect();
            let k = (0..totals.len()).max_by(|&a, &b| totals[a].total_cmp(&totals[b])).expect("non-empty");
            let fractions: Vec<f64> = spectrum.populations[k].iter().map(|p| p / totals[k]).collect();
            let mut buf = Vec::new();
            output::write_detection(&mut buf, &spectrum)?;
            let summary = json!({
                "points": omegas.len(),
                "peak_omega_d": omegas[k],
                "peak_total_population": totals[k],
                "peak_site_fractions": fractions,
            });
            let summary = finite_or_numeric(summary, totals.iter().copied())?;
            Ok((vec![("", buf)], summary))
        }
        Task::VerifyMap { grid, sign } => verify_map(spec, grid, *sign),
    }
}

fn verify_map(spec: &ChainSpec, grid: &[f64], sign: crate::circuit::SignConvention) -> Result<(Tables, Value)> {
    let mut rows = Vec::with_capacity(grid.len());
    for &th in grid {
        let h_eff = effective_hamiltonian(&CircuitParams::beam_splitter_recipe(th).with_sign(sign), spec)?;
        let h_bs = build_hamiltonian(spec, &coupling_profile(&Scenario::beam_splitter(), th));
        rows.push((th, h_eff.max_abs_diff(&h_bs)));
    }
    let (worst_theta, max_abs_diff) = rows.iter().copied().fold((f64::NAN, 0.0), |acc, r| if r.1 >= acc.1 { r } else { acc });
    if !(max_abs_diff <= 1e-12) {
        return Err(Error::numeric(format!(
            "circuit lattice differs from the beam-splitter chain by {max_abs_diff:e} at θ = {worst_theta}"
        )));
    }
    let mut buf = Vec::new();
    output::write_mapping(&mut buf, &rows)?;
    Ok((vec![("", buf)], json!({ "points": grid.len(), "max_abs_diff": max_abs_diff, "worst_theta": worst_theta })))
}
