mod common;

use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use ssh_channels::chain::{ChainSpec, HamiltonianPath, Scenario};
use ssh_channels::dynamics::{
    evolve, evolve_final, omega_sweep, transfer_fidelity, DriveSchedule, Integrator, IntegratorConfig, StateVector,
};
use ssh_channels::spectral::SiteDistribution;

fn library_final(model: Scenario, cells: usize, omega: f64, t0: f64, t1: f64, site: usize, cfg: &IntegratorConfig) -> Vec<common::C> {
    let spec = ChainSpec::new(cells).unwrap();
    let psi0 = StateVector::basis(spec.n_sites(), site).unwrap();
    let sched = DriveSchedule::new(omega, t0, t1).unwrap();
    evolve_final(&HamiltonianPath::new(&spec, &model), &sched, &psi0, cfg).unwrap().amplitudes().to_vec()
}

#[test]
fn magnus_matches_rk4_over_a_full_cycle() {
    let cfg = IntegratorConfig::default();
    for (name, model, site) in [("rm", Scenario::rice_mele(1.0), 0), ("bs", Scenario::beam_splitter(), 7), ("nnn", Scenario::staggered_nnn(1.0), 0)] {
        for omega in [5e-2, 5e-3] {
            // RK4 at this step is itself good to ~1e-10 in infidelity
            let steps = (TAU / omega / 0.0025).round() as usize;
            let reference = common::rk4(name, 4, omega, 0.0, TAU, &common::basis(8, site), steps);
            let ours = library_final(model, 4, omega, 0.0, TAU, site, &cfg);
            let err = common::infidelity(&reference, &ours);
            assert!(err < 1e-8, "{name} Ω={omega}: 1-|⟨rk4|ψ⟩|² = {err:e}");
        }
    }
}

#[test]
fn midpoint_rule_tracks_rk4_loosely() {
    let cfg = IntegratorConfig { integrator: Integrator::Midpoint, ..Default::default() };
    let omega = 5e-3;
    let reference = common::rk4("rm", 4, omega, 0.0, TAU, &common::basis(8, 0), (TAU / omega / 0.01) as usize);
    let ours = library_final(Scenario::rice_mele(1.0), 4, omega, 0.0, TAU, 0, &cfg);
    assert!(common::infidelity(&reference, &ours) < 1e-3);
}

#[test]
fn partial_range_matches_rk4() {
    let omega = 2e-2;
    let (t0, t1) = (0.3 * PI, 1.2 * PI);
    let steps = ((t1 - t0) / omega / 0.0025) as usize;
    let reference = common::rk4("bs", 3, omega, t0, t1, &common::basis(6, 2), steps);
    let ours = library_final(Scenario::beam_splitter(), 3, omega, t0, t1, 2, &IntegratorConfig::default());
    assert!(common::infidelity(&reference, &ours) < 1e-9);
}

#[test]
fn step_halving_changes_little_at_the_working_points() {
    for (model, omega, site) in [(Scenario::rice_mele(1.0), 5e-4, 0), (Scenario::beam_splitter(), 1e-4, 19)] {
        let coarse = IntegratorConfig::default();
        let fine = IntegratorConfig { dtheta_step: coarse.dtheta_step / 2.0, ..coarse };
        let a = library_final(model, 10, omega, 0.0, TAU, site, &coarse);
        let b = library_final(model, 10, omega, 0.0, TAU, site, &fine);
        let d = common::infidelity(&a, &b);
        assert!(d < 1e-6, "{:?}: {d:e}", model.tag);
    }
}

#[test]
fn backward_run_recovers_the_initial_state() {
    let spec = ChainSpec::new(10).unwrap();
    let path = HamiltonianPath::new(&spec, &Scenario::rice_mele(1.0));
    let cfg = IntegratorConfig::default();
    let psi0 = StateVector::basis(20, 0).unwrap();
    let fwd = DriveSchedule::full_cycle(1e-3).unwrap();
    let psi1 = evolve_final(&path, &fwd, &psi0, &cfg).unwrap();
    let back = evolve_final(&path, &fwd.reversed(), &psi1, &cfg).unwrap();
    assert!(fwd.reversed().total_time() < 0.0);
    assert!(transfer_fidelity(&back, &psi0) > 1.0 - 1e-6);
}

#[test]
fn rice_mele_fidelity_is_not_monotonic_in_rate() {
    let spec = ChainSpec::new(10).unwrap();
    let mut q = vec![0.0; 20];
    q[19] = 1.0;
    let omegas: Vec<f64> = (0..12).map(|k| 1e-3 * 1.25f64.powi(k)).collect();
    let rows = omega_sweep(
        &spec,
        &Scenario::rice_mele(1.0),
        &omegas,
        &StateVector::basis(20, 0).unwrap(),
        &SiteDistribution::new(q).unwrap(),
        &IntegratorConfig::default(),
    )
    .unwrap();
    let f: Vec<f64> = rows.iter().map(|r| r.fidelity_overlap).collect();
    assert!(f.windows(2).any(|w| w[1] > w[0]), "{f:?}");
    assert!(f.windows(2).any(|w| w[1] < w[0]), "{f:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evolution_is_unitary(
        which in 0usize..4,
        omega in 1e-3..1e-1f64,
        start in 0.0..PI,
        span in 0.1..TAU,
        site in 0usize..8,
    ) {
        let model = [Scenario::rice_mele(1.0), Scenario::staggered_nnn(0.7), Scenario::beam_splitter(), Scenario::fixed_nnn(-0.5, 0.5)][which];
        let spec = ChainSpec::new(4).unwrap();
        let cfg = IntegratorConfig { snapshot_count: 20, ..Default::default() };
        let traj = evolve(&spec, &model, &DriveSchedule::new(omega, start, start + span).unwrap(), &StateVector::basis(8, site).unwrap(), &cfg).unwrap();
        prop_assert!(traj.max_norm_defect() <= 1e-8);
        prop_assert_eq!(traj.len(), 20);
        prop_assert!((traj.thetas[19] - (start + span)).abs() < 1e-12);
    }

    #[test]
    fn reversal_undoes_any_segment(omega in 1e-3..1e-1f64, start in 0.0..PI, span in 0.1..3.0f64, site in 0usize..6) {
        let spec = ChainSpec::new(3).unwrap();
        let path = HamiltonianPath::new(&spec, &Scenario::beam_splitter());
        let cfg = IntegratorConfig::default();
        let psi0 = StateVector::basis(6, site).unwrap();
        let s = DriveSchedule::new(omega, start, start + span).unwrap();
        let psi1 = evolve_final(&path, &s, &psi0, &cfg).unwrap();
        let back = evolve_final(&path, &s.reversed(), &psi1, &cfg).unwrap();
        prop_assert!(transfer_fidelity(&back, &psi0) > 1.0 - 1e-10);
    }
}
