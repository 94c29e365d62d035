//! Circuit-QED lattice: resonators coupled through dispersive qubits, and
//! the steady-state response to a coherent drive with photon loss `κ`.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{build_hamiltonian, coupling_profile, BondCouplings, ChainSpec, HermitianMatrix, Scenario};
use crate::dynamics::C64;
use crate::error::{Error, Result};
use crate::spectral::{eigendecompose, gap_state_select};

/// Overall sign of the dispersive Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// Overall minus absorbed into the energy unit: the detuning recipe
    /// yields the beam-splitter lattice with its usual signs.
    #[default]
    Absorbed,
    /// Keep the minus in front of every `g²/Δ` term.
    Literal,
}

/// Qubit-mediated couplings. Inverse detunings are stored so that a qubit
/// far off resonance (`1/Δ = 0`) is representable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitParams {
    pub inv_delta_a: f64,
    pub inv_delta_b: f64,
    pub inv_delta_1: f64,
    pub inv_delta_2: f64,
    pub inv_delta_3: f64,
    pub g_a: f64,
    pub g_b: f64,
    pub g_1: f64,
    pub g_2: f64,
    pub g_3: f64,
    pub sign: SignConvention,
}

impl CircuitParams {
    /// Unit couplings (`-g = 1`) with the given inverse detunings
    /// `[a, b, 1, 2, 3]`.
    pub fn from_inverse_detunings(inv: [f64; 5]) -> Self {
        CircuitParams {
            inv_delta_a: inv[0],
            inv_delta_b: inv[1],
            inv_delta_1: inv[2],
            inv_delta_2: inv[3],
            inv_delta_3: inv[4],
            g_a: -1.0,
            g_b: -1.0,
            g_1: -1.0,
            g_2: -1.0,
            g_3: -1.0,
            sign: SignConvention::Absorbed,
        }
    }

    /// Detunings `[a, b, 1, 2, 3]` and couplings in the same order.
    pub fn from_detunings(deltas: [f64; 5], g: [f64; 5]) -> Result<Self> {
        const NAMES: [&str; 5] = ["delta_a", "delta_b", "delta_1", "delta_2", "delta_3"];
        let mut inv = [0.0; 5];
        for (k, &d) in deltas.iter().enumerate() {
            if d == 0.0 || !d.is_finite() {
                return Err(Error::config(NAMES[k], format!("detuning must be finite and non-zero, got {d}")));
            }
            inv[k] = 1.0 / d;
        }
        let mut cp = CircuitParams::from_inverse_detunings(inv);
        [cp.g_a, cp.g_b, cp.g_1, cp.g_2, cp.g_3] = g;
        cp.validate()?;
        Ok(cp)
    }

    /// Detunings that turn the lattice into the beam-splitter chain at `θ`.
    pub fn beam_splitter_recipe(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        CircuitParams::from_inverse_detunings([-(4.0 + 2.0 * c + s), -2.0 + s, 1.0 - c, 1.0 + c, 1.0 + c])
    }

    pub fn with_sign(mut self, sign: SignConvention) -> Self {
        self.sign = sign;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.inv_delta_a,
            self.inv_delta_b,
            self.inv_delta_1,
            self.inv_delta_2,
            self.inv_delta_3,
            self.g_a,
            self.g_b,
            self.g_1,
            self.g_2,
            self.g_3,
        ];
        if all.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::config("circuit", "detunings and couplings must be finite"))
        }
    }

    /// Lattice couplings `g²/Δ` of one unit cell as bond couplings.
    pub fn bond_couplings(&self, spec: &ChainSpec) -> Result<BondCouplings> {
        self.validate()?;
        let sign = match self.sign {
            SignConvention::Absorbed => 1.0,
            SignConvention::Literal => -1.0,
        };
        let ja = self.g_a * self.g_a * self.inv_delta_a;
        let jb = self.g_b * self.g_b * self.inv_delta_b;
        let j1 = self.g_1 * self.g_1 * self.inv_delta_1;
        let j2 = self.g_2 * self.g_2 * self.inv_delta_2;
        let j3 = self.g_3 * self.g_3 * self.inv_delta_3;
        let mut b = BondCouplings::zeros(spec);
        for (i, v) in b.onsite.iter_mut().enumerate() {
            *v = sign * if i % 2 == 0 { ja + j1 + j2 + 2.0 * j3 } else { jb + j1 + j2 };
        }
        for (i, t) in b.nn.iter_mut().enumerate() {
            *t = sign * if i % 2 == 0 { j1 } else { j2 };
        }
        for t in b.nnn_a.iter_mut() {
            *t = sign * j3;
        }
        Ok(b)
    }
}

pub fn effective_hamiltonian(cp: &CircuitParams, spec: &ChainSpec) -> Result<HermitianMatrix> {
    Ok(cp.bond_couplings(spec)?.to_hamiltonian())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MappingReport {
    /// Largest entry-wise deviation over the grid.
    pub max_abs_diff: f64,
    /// Grid point where it occurs.
    pub worst_theta: f64,
    pub points: usize,
}

impl MappingReport {
    pub fn passes(&self) -> bool {
        self.max_abs_diff <= 1e-12
    }
}

/// Compare the lattice produced by `recipe(θ)` with the beam-splitter chain.
pub fn verify_mapping_with<F: Fn(f64) -> CircuitParams>(
    spec: &ChainSpec,
    theta_grid: &[f64],
    recipe: F,
) -> Result<MappingReport> {
    let mut report = MappingReport { max_abs_diff: 0.0, worst_theta: f64::NAN, points: theta_grid.len() };
    for &th in theta_grid {
        let h_eff = effective_hamiltonian(&recipe(th), spec)?;
        let h_bs = build_hamiltonian(spec, &coupling_profile(&Scenario::beam_splitter(), th));
        let d = h_eff.max_abs_diff(&h_bs);
        if d > report.max_abs_diff || report.worst_theta.is_nan() {
            report.max_abs_diff = d;
            report.worst_theta = th;
        }
    }
    Ok(report)
}

/// [`verify_mapping_with`] for the standard detuning recipe.
pub fn verify_mapping(spec: &ChainSpec, theta_grid: &[f64]) -> Result<MappingReport> {
    verify_mapping_with(spec, theta_grid, CircuitParams::beam_splitter_recipe)
}

/// Coherent drive amplitudes per resonator.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveVector {
    amplitudes: Vec<C64>,
}

impl DriveVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::config("drive", "amplitudes must be finite"));
        }
        if amplitudes.iter().all(|a| a.norm_sqr() == 0.0) {
            return Err(Error::config("drive", "at least one amplitude must be non-zero"));
        }
        Ok(DriveVector { amplitudes })
    }

    pub fn single(dim: usize, site: usize, amplitude: f64) -> Result<Self> {
        if site >= dim {
            return Err(Error::config("drive.site", format!("site {site} outside a chain of {dim} sites")));
        }
        let mut a = vec![C64::new(0.0, 0.0); dim];
        a[site] = C64::new(amplitude, 0.0);
        DriveVector::new(a)
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn scaled(&self, c: C64) -> DriveVector {
        DriveVector { amplitudes: self.amplitudes.iter().map(|a| a * c).collect() }
    }
}

/// Steady-state amplitudes `a` solving `(ω_d − H + iκ/2) a = F`.
pub fn steady_state(h: &HermitianMatrix, drive: &DriveVector, omega_d: f64, kappa: f64) -> Result<Vec<C64>> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::config("kappa", format!("loss rate must be positive, got {kappa}")));
    }
    let n = h.dim();
    if drive.amplitudes.len() != n {
        return Err(Error::config("drive", format!("{} amplitudes for {n} sites", drive.amplitudes.len())));
    }
    let m = DMatrix::from_fn(n, n, |i, j| {
        let diag = if i == j { C64::new(omega_d, 0.5 * kappa) } else { C64::new(0.0, 0.0) };
        diag - h.get(i, j)
    });
    let rhs = DVector::from_column_slice(&drive.amplitudes);
    let a = m.lu().solve(&rhs).ok_or_else(|| Error::numeric("resolvent is singular"))?;
    Ok(a.iter().copied().collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionSpectrum {
    pub kappa: f64,
    pub omegas: Vec<f64>,
    /// `populations[k][site]` at `omegas[k]`.
    pub populations: Vec<Vec<f64>>,
}

impl DetectionSpectrum {
    /// Populations of one site across the frequency grid.
    pub fn site_trace(&self, site: usize) -> Vec<f64> {
        self.populations.iter().map(|p| p[site]).collect()
    }
}

pub fn detection_spectrum(
    h: &HermitianMatrix,
    drive: &DriveVector,
    omega_grid: &[f64],
    kappa: f64,
) -> Result<DetectionSpectrum> {
    if omega_grid.is_empty() {
        return Err(Error::config("omega_d", "frequency grid is empty"));
    }
    let populations = omega_grid
        .par_iter()
        .map(|&w| Ok(steady_state(h, drive, w, kappa)?.iter().map(|a| a.norm_sqr()).collect()))
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(DetectionSpectrum { kappa, omegas: omega_grid.to_vec(), populations })
}

/// Energy of whichever gap state has more weight on `site`.
pub fn resonant_frequency(h: &HermitianMatrix, site: usize) -> Result<f64> {
    let es = eigendecompose(h)?;
    let g = gap_state_select(&es);
    let w = |k: usize| es.vectors[(site, k)].powi(2);
    Ok(if w(g.upper_index) >= w(g.lower_index) { g.upper_energy } else { g.lower_energy })
}

/// Uniform grid of `points` frequencies on `[lo, hi]`.
pub fn frequency_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::config("omega_d", "needs lo < hi"));
    }
    if points < 2 {
        return Err(Error::config("omega_d.points", "needs at least 2 points"));
    }
    Ok((0..points).map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64).collect())
}
