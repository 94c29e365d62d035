//! Dense eigen-decomposition, θ-sweeps of the spectrum, gap-state selection
//! and the analytic edge-state ansatz.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{build_hamiltonian, coupling_profile, ChainSpec, CouplingSet, HermitianMatrix, Scenario};
use crate::error::{Error, Result};

/// Ascending eigenvalues with the matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub energies: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k).iter().copied().collect()
    }

    pub fn distribution(&self, k: usize) -> SiteDistribution {
        let col = self.vectors.column(k);
        SiteDistribution { probabilities: col.iter().map(|v| v * v).collect() }
    }
}

/// Eigen-decomposition of a real symmetric matrix. Each eigenvector is
/// signed so that its largest-magnitude component is positive (the first
/// such component on ties).
pub fn eigendecompose(h: &HermitianMatrix) -> Result<EigenSystem> {
    if h.matrix().iter().any(|v| !v.is_finite()) {
        return Err(Error::numeric("Hamiltonian has non-finite entries"));
    }
    let eig = SymmetricEigen::new(h.matrix().clone());
    let n = h.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let energies = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col = eig.eigenvectors.column(src);
        let mut pivot = 0;
        for i in 1..n {
            if col[i].abs() > col[pivot].abs() {
                pivot = i;
            }
        }
        let sign = if col[pivot] < 0.0 { -1.0 } else { 1.0 };
        vectors.set_column(dst, &(col * sign));
    }
    Ok(EigenSystem { energies, vectors })
}

/// The two levels in the middle of the ascending spectrum (0-based indices
/// `N - 1` and `N`, i.e. positions N and N+1 counting from one).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapStatePair {
    pub lower_index: usize,
    pub upper_index: usize,
    pub lower_energy: f64,
    pub upper_energy: f64,
}

impl GapStatePair {
    pub fn splitting(&self) -> f64 {
        self.upper_energy - self.lower_energy
    }
}

pub fn gap_state_select(es: &EigenSystem) -> GapStatePair {
    let n = es.dim() / 2;
    assert!(n >= 2, "gap-state selection needs at least 4 levels");
    GapStatePair {
        lower_index: n - 1,
        upper_index: n,
        lower_energy: es.energies[n - 1],
        upper_energy: es.energies[n],
    }
}

/// Per-site occupation probabilities of a state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SiteDistribution {
    pub probabilities: Vec<f64>,
}

impl SiteDistribution {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::numeric("probabilities must be finite and non-negative"));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::numeric(format!("probabilities sum to {total}, not 1")));
        }
        Ok(SiteDistribution { probabilities })
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Site with the largest probability (0-based).
    pub fn peak_site(&self) -> usize {
        self.probabilities
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }

    /// Total weight on the first half of the chain.
    pub fn left_weight(&self) -> f64 {
        self.probabilities[..self.len() / 2].iter().sum()
    }

    pub fn mirrored(&self) -> SiteDistribution {
        SiteDistribution { probabilities: self.probabilities.iter().rev().copied().collect() }
    }
}

pub fn site_distribution(v: &[f64]) -> Result<SiteDistribution> {
    let norm2: f64 = v.iter().map(|x| x * x).sum();
    if norm2 == 0.0 || !norm2.is_finite() {
        return Err(Error::numeric("cannot form a distribution from a zero or non-finite vector"));
    }
    Ok(SiteDistribution { probabilities: v.iter().map(|x| x * x / norm2).collect() })
}

/// One θ point of a spectrum scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub theta: f64,
    pub energies: Vec<f64>,
    pub trace: f64,
    pub gap: GapStatePair,
    pub lower: SiteDistribution,
    pub upper: SiteDistribution,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub n_sites: usize,
    pub rows: Vec<ScanRow>,
}

pub fn spectrum_scan(spec: &ChainSpec, scenario: &Scenario, theta_grid: &[f64]) -> Result<ScanResult> {
    if theta_grid.is_empty() {
        return Err(Error::config("grid", "θ grid is empty"));
    }
    for w in theta_grid.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::config("grid", "θ grid must be strictly increasing"));
        }
    }
    if theta_grid[0] < 0.0 || theta_grid[theta_grid.len() - 1] > std::f64::consts::TAU + 1e-12 {
        return Err(Error::config("grid", "θ grid must lie within [0, 2π]"));
    }
    let rows = theta_grid
        .par_iter()
        .map(|&theta| {
            let h = build_hamiltonian(spec, &coupling_profile(scenario, theta));
            let es = eigendecompose(&h)?;
            let gap = gap_state_select(&es);
            Ok(ScanRow {
                theta,
                trace: h.trace(),
                lower: es.distribution(gap.lower_index),
                upper: es.distribution(gap.upper_index),
                energies: es.energies,
                gap,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult { n_sites: spec.n_sites(), rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeSide {
    Left,
    Right,
}

/// Sublattice-polarised decaying ansatz for an edge state.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeStateAnsatz {
    pub side: EdgeSide,
    /// Cell-to-cell amplitude ratio: `-t1/t2` on the left, `-t2/t1` on the right.
    pub ratio: f64,
    pub amplitudes: Vec<f64>,
    pub energy: f64,
    /// `|ratio| >= 1`: the profile does not decay into the bulk, so on a
    /// long chain it is not an edge state.
    pub bulk_like: bool,
}

impl EdgeStateAnsatz {
    /// `|<self|v>|²` for a real vector `v`.
    pub fn overlap(&self, v: &[f64]) -> f64 {
        let dot: f64 = self.amplitudes.iter().zip(v).map(|(a, b)| a * b).sum();
        dot * dot
    }
}

fn geometric_profile(ratio: f64, n: usize) -> Vec<f64> {
    // normalise around the largest element so large ratios cannot overflow
    let anchor = if ratio.abs() <= 1.0 { 0 } else { n - 1 };
    let raw: Vec<f64> = (0..n).map(|k| ratio.powi(k as i32 - anchor as i32)).collect();
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    raw.into_iter().map(|x| x / norm).collect()
}

/// Left ansatz on the a sites with energy `Va`, right ansatz on the b sites
/// with energy `Vb`.
pub fn analytic_edge_states(c: &CouplingSet, spec: &ChainSpec) -> Result<(EdgeStateAnsatz, EdgeStateAnsatz)> {
    if c.t2 == 0.0 {
        return Err(Error::numeric("left ansatz undefined: t2 = 0"));
    }
    if c.t1 == 0.0 {
        return Err(Error::numeric("right ansatz undefined: t1 = 0"));
    }
    let n = spec.n_cells();
    let build = |side: EdgeSide, ratio: f64, energy: f64| {
        let cells = geometric_profile(ratio, n);
        let mut amplitudes = vec![0.0; spec.n_sites()];
        for (cell, amp) in cells.into_iter().enumerate() {
            let site = match side {
                EdgeSide::Left => spec.a_site(cell),
                EdgeSide::Right => spec.b_site(cell),
            };
            amplitudes[site] = amp;
        }
        EdgeStateAnsatz { side, ratio, amplitudes, energy, bulk_like: ratio.abs() >= 1.0 - 1e-12 }
    };
    let left = build(EdgeSide::Left, -c.t1 / c.t2, c.va);
    let right = build(EdgeSide::Right, -c.t2 / c.t1, c.vb);
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ScenarioTag;
    use std::f64::consts::PI;

    fn system(n: usize, s: Scenario, th: f64) -> (HermitianMatrix, EigenSystem) {
        let spec = ChainSpec::new(n).unwrap();
        let h = build_hamiltonian(&spec, &coupling_profile(&s, th));
        let es = eigendecompose(&h).unwrap();
        (h, es)
    }

    #[test]
    fn dimerized_two_cell_spectrum() {
        let (_, es) = system(2, Scenario::bare_ssh(), 0.0);
        let expect = [-2.0, 0.0, 0.0, 2.0];
        for (e, x) in es.energies.iter().zip(expect) {
            assert!((e - x).abs() < 1e-14);
        }
        let (_, es) = system(2, Scenario::bare_ssh(), PI);
        let expect = [-2.0, -2.0, 2.0, 2.0];
        for (e, x) in es.energies.iter().zip(expect) {
            assert!((e - x).abs() < 1e-14);
        }
    }

    #[test]
    fn residual_and_orthonormality() {
        for tag in ScenarioTag::ALL {
            let s = Scenario { fixed_t1: -0.5, fixed_t2: 0.5, ..Scenario::new(tag) };
            let (h, es) = system(10, s, 0.37 * PI);
            let r = h.matrix() * &es.vectors - &es.vectors * DMatrix::from_diagonal(&es.energies.clone().into());
            assert!(r.abs().max() < 1e-10);
            let g = es.vectors.transpose() * &es.vectors - DMatrix::identity(20, 20);
            assert!(g.abs().max() < 1e-10);
            assert!(es.energies.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn sign_convention() {
        let (_, es) = system(10, Scenario::rice_mele(1.0), 0.7);
        for k in 0..es.dim() {
            let col = es.vectors.column(k);
            let big = col.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
            assert!(big > 0.0);
        }
    }

    #[test]
    fn non_finite_rejected() {
        let mut m = DMatrix::zeros(4, 4);
        m[(0, 0)] = f64::NAN;
        let h = HermitianMatrix::from_matrix(m);
        // NaN != NaN on the diagonal is fine for symmetry; eigendecompose must refuse it
        let h = h.unwrap();
        assert!(eigendecompose(&h).is_err());
    }

    #[test]
    fn gap_pair_is_middle() {
        let (_, es) = system(10, Scenario::rice_mele(1.0), 0.25 * PI);
        let g = gap_state_select(&es);
        assert_eq!((g.lower_index + 1, g.upper_index + 1), (10, 11));
        assert!((g.upper_energy - (0.25 * PI).sin()).abs() < 1e-3);
        assert!((g.lower_energy + (0.25 * PI).sin()).abs() < 1e-3);
    }

    #[test]
    fn zero_modes_of_bare_chain() {
        let (_, es) = system(10, Scenario::bare_ssh(), 0.15 * PI);
        let g = gap_state_select(&es);
        assert!(g.lower_energy.abs() < 1e-9 && g.upper_energy.abs() < 1e-9);
    }

    #[test]
    fn distribution_of_basis_vector() {
        let mut v = vec![0.0; 6];
        v[0] = 1.0;
        let d = site_distribution(&v).unwrap();
        assert_eq!(d.probabilities, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(site_distribution(&[0.0; 4]).is_err());
    }

    #[test]
    fn rice_mele_upper_state_moves_across() {
        let (_, es) = system(10, Scenario::rice_mele(1.0), 0.15 * PI);
        let g = gap_state_select(&es);
        assert_eq!(es.distribution(g.upper_index).peak_site(), 0);
        let (_, es) = system(10, Scenario::rice_mele(1.0), 1.85 * PI);
        let g = gap_state_select(&es);
        assert_eq!(es.distribution(g.upper_index).peak_site(), 19);
    }

    #[test]
    fn beam_splitter_upper_state_splits_over_first_two_sites() {
        let (_, es) = system(10, Scenario::beam_splitter(), 1.85 * PI);
        let g = gap_state_select(&es);
        let d = es.distribution(g.upper_index);
        assert!((d.probabilities[0] - 0.5).abs() < 0.06, "{:?}", d.probabilities);
        assert!((d.probabilities[1] - 0.5).abs() < 0.06);
    }

    #[test]
    fn ansatz_ratio_and_overlap() {
        let th = 0.15 * PI;
        let spec = ChainSpec::new(10).unwrap();
        let c = coupling_profile(&Scenario::rice_mele(1.0), th);
        let (left, right) = analytic_edge_states(&c, &spec).unwrap();
        // (1 - cos θ) / (1 + cos θ) = tan²(θ/2)
        assert!((left.ratio + (0.5 * th).tan().powi(2)).abs() < 1e-15);
        assert!((left.ratio + 0.05764).abs() < 1e-5);
        assert!(!left.bulk_like);
        assert!(left.amplitudes.iter().skip(1).step_by(2).all(|&x| x == 0.0));
        assert!(right.amplitudes.iter().step_by(2).all(|&x| x == 0.0));
        let norm: f64 = left.amplitudes.iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        assert!((left.energy - th.sin()).abs() < 1e-15);
        assert!((right.energy + th.sin()).abs() < 1e-15);

        let es = eigendecompose(&build_hamiltonian(&spec, &c)).unwrap();
        let g = gap_state_select(&es);
        assert!(left.overlap(&es.vector(g.upper_index)) > 0.999);
        assert!(right.overlap(&es.vector(g.lower_index)) > 0.999);
    }

    #[test]
    fn ansatz_flags_and_errors() {
        let spec = ChainSpec::new(10).unwrap();
        let c = coupling_profile(&Scenario::rice_mele(1.0), PI / 2.0);
        let (left, right) = analytic_edge_states(&c, &spec).unwrap();
        assert!(left.bulk_like && right.bulk_like);
        let c = coupling_profile(&Scenario::rice_mele(1.0), 0.0);
        assert!(analytic_edge_states(&c, &spec).is_err());
        let c = coupling_profile(&Scenario::rice_mele(1.0), PI);
        assert!(analytic_edge_states(&c, &spec).is_err());
    }

    #[test]
    fn scan_validates_grid() {
        let spec = ChainSpec::new(4).unwrap();
        let s = Scenario::bare_ssh();
        assert!(spectrum_scan(&spec, &s, &[]).is_err());
        assert!(spectrum_scan(&spec, &s, &[0.2, 0.1]).is_err());
        assert!(spectrum_scan(&spec, &s, &[-0.1, 0.1]).is_err());
        let r = spectrum_scan(&spec, &s, &[0.1, 0.2, 0.3]).unwrap();
        assert_eq!(r.rows.len(), 3);
        assert_eq!(r.rows[1].theta, 0.2);
    }
}
