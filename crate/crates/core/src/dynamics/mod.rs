//! Adiabatic drives `θ_t = θ_start + Ω t` and transfer fidelities.

mod oscillatory;
mod propagator;

use nalgebra::DVector;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use self::oscillatory::C64;
pub use self::propagator::Integrator;
use self::propagator::PanelStepper;
use crate::chain::{ChainSpec, HamiltonianPath, Scenario};
use crate::error::{Error, Result};
use crate::spectral::SiteDistribution;

/// Tolerance on `‖ψ‖ = 1` for accepted inputs.
pub const NORM_TOLERANCE: f64 = 1e-8;

/// Complex amplitudes over the sites of the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let amplitudes = DVector::from_vec(amplitudes);
        if amplitudes.is_empty() {
            return Err(Error::numeric("state vector is empty"));
        }
        let norm = amplitudes.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::numeric(format!("state vector norm {norm} is not 1")));
        }
        Ok(StateVector { amplitudes })
    }

    /// Rescale arbitrary (non-zero) amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let v = DVector::from_vec(amplitudes);
        let norm = v.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::numeric("cannot normalise a zero or non-finite state"));
        }
        StateVector::new((v / C64::new(norm, 0.0)).data.into())
    }

    /// `|site⟩`.
    pub fn basis(dim: usize, site: usize) -> Result<Self> {
        if site >= dim {
            return Err(Error::config("site", format!("site {site} outside a chain of {dim} sites")));
        }
        let mut v = vec![C64::new(0.0, 0.0); dim];
        v[site] = C64::new(1.0, 0.0);
        StateVector::new(v)
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        StateVector::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Real non-negative amplitudes `√q` carrying the target populations.
    pub fn from_distribution(q: &SiteDistribution) -> Result<Self> {
        StateVector::normalized(q.probabilities.iter().map(|&p| C64::new(p.sqrt(), 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.amplitudes.as_slice()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }
}

/// Linear sweep of θ at constant rate.
///
/// The elapsed time is `(theta_end - theta_start) / omega`. A negative
/// elapsed time means propagation backwards in time, which is how
/// [`DriveSchedule::reversed`] undoes a forward run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveSchedule {
    pub omega: f64,
    pub theta_start: f64,
    pub theta_end: f64,
}

impl DriveSchedule {
    pub fn new(omega: f64, theta_start: f64, theta_end: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::config("omega", format!("must be positive and finite, got {omega}")));
        }
        if !theta_start.is_finite() || !theta_end.is_finite() {
            return Err(Error::config("theta", "range must be finite"));
        }
        if theta_end == theta_start {
            return Err(Error::config("theta_end", "must differ from theta_start"));
        }
        Ok(DriveSchedule { omega, theta_start, theta_end })
    }

    /// One full cycle `0 → 2π`.
    pub fn full_cycle(omega: f64) -> Result<Self> {
        DriveSchedule::new(omega, 0.0, std::f64::consts::TAU)
    }

    /// The same path traversed from its end back to its start, backwards in
    /// time.
    pub fn reversed(&self) -> Self {
        DriveSchedule { omega: self.omega, theta_start: self.theta_end, theta_end: self.theta_start }
    }

    pub fn total_time(&self) -> f64 {
        (self.theta_end - self.theta_start) / self.omega
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    /// Largest θ increment per panel.
    pub dtheta_step: f64,
    /// Stored states including both endpoints.
    pub snapshot_count: usize,
    pub integrator: Integrator,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig { dtheta_step: 1e-3, snapshot_count: 400, integrator: Integrator::Magnus }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dtheta_step > 0.0 && self.dtheta_step <= 1e-2) {
            return Err(Error::config("dtheta_step", format!("must lie in (0, 1e-2], got {}", self.dtheta_step)));
        }
        if self.snapshot_count < 2 {
            return Err(Error::config("snapshot_count", "must be at least 2"));
        }
        Ok(())
    }

    /// Panels per snapshot interval and total panel count for a θ span.
    ///
    /// Every snapshot interval holds the same whole number of panels, so
    /// halving `dtheta_step` exactly doubles the panel count once the span is
    /// resolved.
    pub fn panel_grid(&self, span: f64) -> (usize, usize) {
        let intervals = self.snapshot_count - 1;
        let per = (span.abs() / (intervals as f64 * self.dtheta_step)).ceil().max(1.0) as usize;
        (per, per * intervals)
    }
}

/// States recorded on a uniform θ grid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub thetas: Vec<f64>,
    pub states: Vec<StateVector>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn populations(&self, k: usize) -> Vec<f64> {
        self.states[k].populations()
    }

    pub fn final_state(&self) -> &StateVector {
        self.states.last().expect("trajectory holds at least two snapshots")
    }

    /// Largest `|‖ψ‖ - 1|` over the snapshots.
    pub fn max_norm_defect(&self) -> f64 {
        self.states.iter().map(|s| (s.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

pub fn evolve(
    spec: &ChainSpec,
    scenario: &Scenario,
    schedule: &DriveSchedule,
    psi0: &StateVector,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    scenario.validate()?;
    evolve_path(&HamiltonianPath::new(spec, scenario), schedule, psi0, cfg)
}

/// Evolve along an explicit Hamiltonian path, recording snapshots.
pub fn evolve_path(
    path: &HamiltonianPath,
    schedule: &DriveSchedule,
    psi0: &StateVector,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    let mut traj = Trajectory { times: Vec::new(), thetas: Vec::new(), states: Vec::new() };
    integrate(path, schedule, psi0, cfg, |theta, psi| {
        traj.times.push((theta - schedule.theta_start) / schedule.omega);
        traj.thetas.push(theta);
        traj.states.push(StateVector { amplitudes: psi.clone() });
    })?;
    Ok(traj)
}

/// Final state only; identical to the last snapshot of [`evolve_path`].
pub fn evolve_final(
    path: &HamiltonianPath,
    schedule: &DriveSchedule,
    psi0: &StateVector,
    cfg: &IntegratorConfig,
) -> Result<StateVector> {
    let mut last = None;
    integrate(path, schedule, psi0, cfg, |_, psi| last = Some(psi.clone()))?;
    Ok(StateVector { amplitudes: last.expect("at least one snapshot") })
}

fn integrate<F: FnMut(f64, &DVector<C64>)>(
    path: &HamiltonianPath,
    schedule: &DriveSchedule,
    psi0: &StateVector,
    cfg: &IntegratorConfig,
    mut snapshot: F,
) -> Result<()> {
    cfg.validate()?;
    if psi0.dim() != path.dim() {
        return Err(Error::config("psi0", format!("{} amplitudes for {} sites", psi0.dim(), path.dim())));
    }
    if (psi0.norm() - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::numeric("initial state is not normalised"));
    }
    let span = schedule.theta_end - schedule.theta_start;
    let (per, n) = cfg.panel_grid(span);
    let theta_at = |j: usize| schedule.theta_start + span * (j as f64 / n as f64);
    let stepper = PanelStepper::new(path, cfg.integrator);
    let mut psi = psi0.amplitudes.clone();
    snapshot(schedule.theta_start, &psi);
    for j in 0..n {
        stepper.step(theta_at(j), theta_at(j + 1), schedule.omega, &mut psi)?;
        if (j + 1) % per == 0 {
            snapshot(theta_at(j + 1), &psi);
        }
    }
    if !psi.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
        return Err(Error::numeric("state became non-finite"));
    }
    Ok(())
}

/// `|⟨target|ψ⟩|²`.
pub fn transfer_fidelity(psi_final: &StateVector, target: &StateVector) -> f64 {
    target.inner(psi_final).norm_sqr().min(1.0)
}

/// Classical fidelity `(Σ √(p_i q_i))²` between the populations of `psi_final`
/// and `target`.
pub fn distribution_fidelity(psi_final: &StateVector, target: &SiteDistribution) -> f64 {
    let s: f64 = psi_final
        .populations()
        .iter()
        .zip(&target.probabilities)
        .map(|(p, q)| (p * q).sqrt())
        .sum();
    (s * s).min(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetMode {
    #[default]
    Overlap,
    Distribution,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub omega: f64,
    pub fidelity_overlap: f64,
    pub fidelity_distribution: f64,
}

impl SweepRow {
    pub fn fidelity(&self, mode: TargetMode) -> f64 {
        match mode {
            TargetMode::Overlap => self.fidelity_overlap,
            TargetMode::Distribution => self.fidelity_distribution,
        }
    }
}

/// Both fidelities of a final state against population target `q`; the
/// overlap uses the amplitudes `√q`.
pub fn fidelities(psi_final: &StateVector, q: &SiteDistribution) -> Result<(f64, f64)> {
    let target = StateVector::from_distribution(q)?;
    Ok((transfer_fidelity(psi_final, &target), distribution_fidelity(psi_final, q)))
}

/// Full-cycle transfer fidelity for each `Ω`, in input order.
pub fn omega_sweep(
    spec: &ChainSpec,
    scenario: &Scenario,
    omegas: &[f64],
    psi0: &StateVector,
    target: &SiteDistribution,
    cfg: &IntegratorConfig,
) -> Result<Vec<SweepRow>> {
    if omegas.is_empty() {
        return Err(Error::config("omegas", "list is empty"));
    }
    if target.len() != spec.n_sites() {
        return Err(Error::config("target", "length does not match the chain"));
    }
    scenario.validate()?;
    let path = HamiltonianPath::new(spec, scenario);
    omegas
        .par_iter()
        .map(|&omega| {
            let schedule = DriveSchedule::full_cycle(omega)?;
            let psi = evolve_final(&path, &schedule, psi0, cfg)?;
            let (fidelity_overlap, fidelity_distribution) = fidelities(&psi, target)?;
            Ok(SweepRow { omega, fidelity_overlap, fidelity_distribution })
        })
        .collect()
}

/// `count` log-spaced rates from `lo` to `hi` inclusive.
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite()) {
        return Err(Error::config("omega_range", "needs 0 < lo < hi"));
    }
    if count < 2 {
        return Err(Error::config("omega_count", "needs at least 2 points"));
    }
    let (a, b) = (lo.log10(), hi.log10());
    Ok((0..count).map(|k| 10f64.powf(a + (b - a) * k as f64 / (count - 1) as f64)).collect())
}
