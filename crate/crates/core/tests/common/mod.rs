//! Reference implementations that share no code with the library: explicit
//! matrix entries, a cyclic Jacobi eigensolver and a fixed-step RK4
//! integrator.

#![allow(dead_code)]

use nalgebra::Complex;

pub type C = Complex<f64>;

/// `(t1, t2, Va, Vb, T1, T2)` written out per model.
pub fn couplings(model: &str, theta: f64) -> [f64; 6] {
    let (c, s) = (theta.cos(), theta.sin());
    let (t1, t2) = (1.0 - c, 1.0 + c);
    match model {
        "bare" => [t1, t2, 0.0, 0.0, 0.0, 0.0],
        "rm" => [t1, t2, s, -s, 0.0, 0.0],
        "nnn" => [t1, t2, 0.0, 0.0, -s, s],
        "bs" => [t1, t2, -s, s, 1.0 + c, 0.0],
        "precursor" => [t1, t2, 0.0, 0.0, 1.0 + c, 0.0],
        other => panic!("unknown model {other}"),
    }
}

/// Dense matrix for sites a1, b1, a2, b2, ...
pub fn explicit_matrix(cells: usize, k: [f64; 6]) -> Vec<Vec<f64>> {
    let [t1, t2, va, vb, tt1, tt2] = k;
    let n = 2 * cells;
    let mut h = vec![vec![0.0; n]; n];
    let mut bond = |i: usize, j: usize, v: f64| {
        h[i][j] = v;
        h[j][i] = v;
    };
    for cell in 0..cells {
        let (a, b) = (2 * cell, 2 * cell + 1);
        bond(a, b, t1);
        if cell + 1 < cells {
            bond(b, a + 2, t2);
            bond(a, a + 2, tt1);
            bond(b, b + 2, tt2);
        }
    }
    for cell in 0..cells {
        h[2 * cell][2 * cell] = va;
        h[2 * cell + 1][2 * cell + 1] = vb;
    }
    h
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut e: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    e.sort_by(f64::total_cmp);
    e
}

fn apply(h: &[Vec<f64>], psi: &[C]) -> Vec<C> {
    h.iter().map(|row| row.iter().zip(psi).map(|(x, p)| p * *x).sum::<C>() * C::new(0.0, -1.0)).collect()
}

fn axpy(psi: &[C], k: &[C], s: f64) -> Vec<C> {
    psi.iter().zip(k).map(|(p, k)| p + k * s).collect()
}

/// Classic RK4 for `i dψ/dt = H(θ0 + Ω t) ψ` with `steps` equal time steps.
pub fn rk4(model: &str, cells: usize, omega: f64, theta0: f64, theta1: f64, psi0: &[C], steps: usize) -> Vec<C> {
    let total = (theta1 - theta0) / omega;
    let dt = total / steps as f64;
    let h_at = |t: f64| explicit_matrix(cells, couplings(model, theta0 + omega * t));
    let mut psi = psi0.to_vec();
    for k in 0..steps {
        let t = k as f64 * dt;
        let (h0, hm, h1) = (h_at(t), h_at(t + 0.5 * dt), h_at(t + dt));
        let k1 = apply(&h0, &psi);
        let k2 = apply(&hm, &axpy(&psi, &k1, 0.5 * dt));
        let k3 = apply(&hm, &axpy(&psi, &k2, 0.5 * dt));
        let k4 = apply(&h1, &axpy(&psi, &k3, dt));
        for i in 0..psi.len() {
            psi[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0);
        }
    }
    psi
}

pub fn basis(n: usize, site: usize) -> Vec<C> {
    let mut v = vec![C::new(0.0, 0.0); n];
    v[site] = C::new(1.0, 0.0);
    v
}

/// `1 - |⟨a|b⟩|²`.
pub fn infidelity(a: &[C], b: &[C]) -> f64 {
    1.0 - a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C>().norm_sqr()
}
