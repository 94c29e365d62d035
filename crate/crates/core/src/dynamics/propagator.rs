//! One θ-panel of the swept Schrödinger equation `i dψ/dt = H(θ0 + Ωt) ψ`.
//!
//! Both schemes diagonalise the panel-midpoint Hamiltonian `H0` and are
//! unitary up to rounding, so the number of panels depends only on the θ
//! grid and not on the (possibly enormous) total time `Δθ / Ω`.
//!
//! * [`Integrator::Midpoint`] freezes `H0` over the panel:
//!   `ψ ← exp(-i H0 h) ψ` with `h = Δθ / Ω`.
//! * [`Integrator::Magnus`] keeps the frozen evolution and corrects it in the
//!   interaction picture of `H0`. The residual `D(s) = H(θc + s) - H0` is
//!   carried exactly to first Magnus order (profiles are trigonometric, so
//!   the oscillatory integrals have closed forms) and to second order through
//!   its linear part `s ∂θH`. The correction stays small when `h ‖H0‖ ≫ 1`,
//!   which is exactly the slow-sweep regime where freezing alone goes wrong.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::oscillatory::{low_moments, nested_small_beta, sinc, sinc_shifted, C64};
use crate::chain::HamiltonianPath;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrator {
    /// Interaction-picture Magnus scheme (default).
    #[default]
    Magnus,
    /// Piecewise-constant midpoint exponential.
    Midpoint,
}

/// Arguments `|X| = |ΔE| h` below this use the small-argument expansion.
const SMALL_PHASE: f64 = 1e-2;

/// Panels whose residual bound exceeds this are split.
const MAX_BOUND: f64 = 0.5;
const MAX_PIECES: usize = 4096;

fn row_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter().map(|r| r.abs().sum()).fold(0.0, f64::max)
}

pub(crate) struct PanelStepper<'a> {
    path: &'a HamiltonianPath,
    kind: Integrator,
}

impl<'a> PanelStepper<'a> {
    pub(crate) fn new(path: &'a HamiltonianPath, kind: Integrator) -> Self {
        PanelStepper { path, kind }
    }

    /// Advance `psi` across `[theta_a, theta_b]` at sweep rate `omega`.
    /// The elapsed time `(theta_b - theta_a) / omega` may be negative, which
    /// propagates backwards; a panel followed by its mirror image is the
    /// identity up to rounding.
    pub(crate) fn step(&self, theta_a: f64, theta_b: f64, omega: f64, psi: &mut DVector<C64>) -> Result<()> {
        let delta = theta_b - theta_a;
        let h = delta / omega;
        if h == 0.0 || !h.is_finite() {
            return Err(Error::numeric(format!("panel duration {h} is zero or not finite")));
        }
        if self.kind == Integrator::Magnus {
            let bound = self.magnus_bound(0.5 * (theta_a + theta_b), delta, h);
            if bound > MAX_BOUND {
                // split very long panels so the expansion stays well inside its radius
                let pieces = (bound / MAX_BOUND).ceil() as usize;
                if pieces > MAX_PIECES {
                    return Err(Error::numeric(format!(
                        "panel needs {pieces} sub-steps to converge; reduce dtheta_step"
                    )));
                }
                for i in 0..pieces {
                    let a = theta_a + delta * i as f64 / pieces as f64;
                    let b = theta_a + delta * (i + 1) as f64 / pieces as f64;
                    self.panel(a, b, omega, psi)?;
                }
                return Ok(());
            }
        }
        self.panel(theta_a, theta_b, omega, psi)
    }

    /// Upper bound on `∫ ‖H(t) - H0‖ dt` over the panel.
    fn magnus_bound(&self, theta_c: f64, delta: f64, h: f64) -> f64 {
        let (sc, cc) = theta_c.sin_cos();
        let p = &self.path.cos * cc + &self.path.sin * sc;
        let q = &self.path.sin * cc - &self.path.cos * sc;
        h.abs() * (delta * delta / 8.0 * row_norm(&p) + delta.abs() / 2.0 * row_norm(&q))
    }

    fn panel(&self, theta_a: f64, theta_b: f64, omega: f64, psi: &mut DVector<C64>) -> Result<()> {
        let delta = theta_b - theta_a;
        let h = delta / omega;
        let theta_c = 0.5 * (theta_a + theta_b);
        let h0 = self.path.at(theta_c);
        let eig = SymmetricEigen::new(h0);
        let v = &eig.eigenvectors;
        let energies = &eig.eigenvalues;
        let n = energies.len();

        let orth = (v.transpose() * v - DMatrix::<f64>::identity(n, n)).abs().max();
        if !(orth < 1e-10) {
            return Err(Error::numeric(format!("eigenbasis lost orthogonality ({orth:e})")));
        }

        let half_phase = |k: usize| C64::from_polar(1.0, -0.5 * energies[k] * h);

        // ψ~ = Vᵀ ψ, rotated by half the frozen evolution
        let mut amp: DVector<C64> = DVector::from_fn(n, |k, _| {
            let mut s = C64::new(0.0, 0.0);
            for i in 0..n {
                s += psi[i] * v[(i, k)];
            }
            s * half_phase(k)
        });

        if self.kind == Integrator::Magnus {
            let generator = self.magnus_generator(theta_c, delta, h, energies.as_slice(), v)?;
            amp = expm_apply(&generator, &amp)?;
        }

        for k in 0..n {
            amp[k] *= half_phase(k);
        }
        for i in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..n {
                s += amp[k] * v[(i, k)];
            }
            psi[i] = s;
        }
        Ok(())
    }

    /// Anti-Hermitian `Ω1 + Ω2` in the eigenbasis of `H0`.
    fn magnus_generator(
        &self,
        theta_c: f64,
        delta: f64,
        h: f64,
        energies: &[f64],
        v: &DMatrix<f64>,
    ) -> Result<DMatrix<C64>> {
        let n = energies.len();
        let (sc, cc) = theta_c.sin_cos();
        // H(θc + s) - H0 = P (cos s - 1) + Q sin s
        let p = &self.path.cos * cc + &self.path.sin * sc;
        let q = &self.path.sin * cc - &self.path.cos * sc;

        let vt = v.transpose();
        let pt = &vt * p * v;
        let qt = &vt * q * v;
        let x = DMatrix::from_fn(n, n, |m, k| (energies[m] - energies[k]) * h);

        // Entries depend on X through sin/cos(X/2) only, and X is
        // antisymmetric, so one pass over the upper triangle fills everything.
        // first order is exact in the trigonometric residual; second order
        // uses the linear residual s Q:
        // F_mn = Σ_k Q_mk Q_kn ℓ(X_mk, X_kn),  Ω2 = -½ δ² h² (F - F†)
        let mut gen = DMatrix::<C64>::zeros(n, n);
        let mut mu1 = DMatrix::<f64>::zeros(n, n); // μ1 = i m1
        let mut mu2 = DMatrix::<f64>::zeros(n, n);
        let mut q_r = DMatrix::<f64>::zeros(n, n);
        let mut q_r2 = DMatrix::<f64>::zeros(n, n);
        let mut q_wr = DMatrix::<f64>::zeros(n, n);
        let mut q_wi = DMatrix::<f64>::zeros(n, n);
        let mut singular = Vec::new();
        let hd = 0.5 * delta;
        let (sd, cd) = hd.sin_cos();
        for m in 0..n {
            for k in m..n {
                let xm = (energies[m] - energies[k]) * h;
                let y = 0.5 * xm;
                let (sy, cy) = y.sin_cos();
                let s0 = if y.abs() < 1e-4 { sinc(y) } else { sy / y };
                let sp = sinc_shifted(y, sy, cy, hd, sd, cd);
                let sm = sinc_shifted(y, sy, cy, -hd, -sd, cd);
                let even = 0.5 * (sp + sm) - s0;
                let odd = sp - sm;
                let (m1, m2) = low_moments(xm, sy, cy);
                let (qv, pv) = (qt[(m, k)], pt[(m, k)]);
                gen[(m, k)] = C64::new(-0.5 * h * qv * odd, -h * pv * even);
                gen[(k, m)] = C64::new(0.5 * h * qv * odd, -h * pv * even);
                mu1[(m, k)] = m1;
                mu1[(k, m)] = -m1;
                mu2[(m, k)] = m2;
                mu2[(k, m)] = m2;
                if xm.abs() < SMALL_PHASE {
                    singular.push((m, k));
                    if k != m {
                        singular.push((k, m));
                    }
                    continue;
                }
                let r = 1.0 / xm;
                // W = e^{-iX/2} (1/X² + i/(2X)); W(-X) = conj W(X)
                let w = C64::new(cy, -sy) * C64::new(r * r, 0.5 * r);
                q_r[(m, k)] = qv * r;
                q_r[(k, m)] = -qv * r;
                q_r2[(m, k)] = qv * r * r;
                q_r2[(k, m)] = qv * r * r;
                q_wr[(m, k)] = qv * w.re;
                q_wr[(k, m)] = qv * w.re;
                q_wi[(m, k)] = qv * w.im;
                q_wi[(k, m)] = -qv * w.im;
            }
        }
        let q_m1 = qt.component_mul(&mu1);
        let a1 = &qt * &q_r;
        let a2 = &qt * &q_r2;
        let b1 = &q_m1 * &q_wr;
        let b2 = &q_m1 * &q_wi;
        let mut f = DMatrix::from_fn(n, n, |m, k| {
            C64::new(b2[(m, k)], -mu2[(m, k)] * a1[(m, k)] + mu1[(m, k)] * a2[(m, k)] - b1[(m, k)])
        });
        for &(k, col) in &singular {
            let qkn = qt[(k, col)];
            if qkn == 0.0 {
                continue;
            }
            let beta = x[(k, col)];
            for m in 0..n {
                f[(m, col)] += nested_small_beta(x[(m, k)], beta) * (qt[(m, k)] * qkn);
            }
        }
        let scale = -0.5 * delta * delta * h * h;
        for m in 0..n {
            for k in 0..n {
                gen[(m, k)] += (f[(m, k)] - f[(k, m)].conj()) * scale;
            }
        }
        Ok(gen)
    }
}

/// `exp(A) v` for a small anti-Hermitian `A` by scaled Taylor summation.
fn expm_apply(a: &DMatrix<C64>, v: &DVector<C64>) -> Result<DVector<C64>> {
    let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !norm.is_finite() {
        return Err(Error::numeric("Magnus generator is not finite"));
    }
    let pieces = norm.ceil().max(1.0) as usize;
    let scaled = a / C64::new(pieces as f64, 0.0);
    let mut out = v.clone();
    for _ in 0..pieces {
        let mut term = out.clone();
        let mut sum = out.clone();
        let mut converged = false;
        for j in 1..40 {
            term = &scaled * term / C64::new(j as f64, 0.0);
            sum += &term;
            if term.norm() <= 1e-17 * sum.norm() {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::numeric("exponential series did not converge"));
        }
        out = sum;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{ChainSpec, Scenario};

    fn basis(n: usize, k: usize) -> DVector<C64> {
        let mut v = DVector::from_element(n, C64::new(0.0, 0.0));
        v[k] = C64::new(1.0, 0.0);
        v
    }

    #[test]
    fn steps_are_unitary() {
        let spec = ChainSpec::new(5).unwrap();
        let path = HamiltonianPath::new(&spec, &Scenario::beam_splitter());
        for kind in [Integrator::Magnus, Integrator::Midpoint] {
            let st = PanelStepper::new(&path, kind);
            for omega in [1e-5, 1e-3, 0.3] {
                let mut psi = basis(10, 9);
                for k in 0..50 {
                    let a = 0.1 + k as f64 * 1e-3;
                    st.step(a, a + 1e-3, omega, &mut psi).unwrap();
                }
                assert!((psi.norm() - 1.0).abs() < 1e-13, "{kind:?} {omega}");
            }
        }
    }

    #[test]
    fn constant_hamiltonian_needs_no_correction() {
        let spec = ChainSpec::new(3).unwrap();
        let path = HamiltonianPath::new(&spec, &Scenario::fixed_nnn(-0.5, 0.5));
        // with cos/sin parts zeroed, H is constant and both schemes are exact
        let frozen = HamiltonianPath { cos: path.cos.clone() * 0.0, sin: path.sin.clone() * 0.0, ..path };
        let mut a = basis(6, 0);
        let mut b = basis(6, 0);
        PanelStepper::new(&frozen, Integrator::Magnus).step(0.0, 0.01, 1e-3, &mut a).unwrap();
        PanelStepper::new(&frozen, Integrator::Midpoint).step(0.0, 0.01, 1e-3, &mut b).unwrap();
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn reversed_panel_inverts_forward_panel() {
        let spec = ChainSpec::new(4).unwrap();
        let path = HamiltonianPath::new(&spec, &Scenario::rice_mele(1.0));
        let st = PanelStepper::new(&path, Integrator::Magnus);
        let psi0 = basis(8, 0);
        let mut psi = psi0.clone();
        st.step(0.5, 0.51, 2e-3, &mut psi).unwrap();
        st.step(0.51, 0.5, 2e-3, &mut psi).unwrap();
        assert!((psi - psi0).norm() < 1e-12);
    }

    #[test]
    fn rejects_degenerate_duration() {
        let spec = ChainSpec::new(2).unwrap();
        let path = HamiltonianPath::new(&spec, &Scenario::bare_ssh());
        let mut psi = basis(4, 0);
        let st = PanelStepper::new(&path, Integrator::Magnus);
        assert!(st.step(0.5, 0.5, 1.0, &mut psi).is_err());
        assert!(st.step(0.5, 0.6, 0.0, &mut psi).is_err());
        assert!(st.step(0.5, 0.6, f64::NAN, &mut psi).is_err());
    }
}
