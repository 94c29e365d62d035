//! Chain geometry, the θ-dependent coupling profiles of every built-in
//! scenario, and assembly of the real-symmetric single-particle Hamiltonian.
//!
//! Sites are laid out as `a1, b1, a2, b2, ..., aN, bN`; with 0-based storage
//! the a-type site of cell `n` sits at `2n` and the b-type site at `2n + 1`.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of unit cells of an open chain. The chain has `2 * n_cells` sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainSpec {
    n_cells: usize,
}

impl ChainSpec {
    pub fn new(n_cells: usize) -> Result<Self> {
        if n_cells < 2 {
            return Err(Error::config("n_cells", format!("need at least 2 unit cells, got {n_cells}")));
        }
        Ok(ChainSpec { n_cells })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn n_sites(&self) -> usize {
        2 * self.n_cells
    }

    /// 0-based index of the a-type site of cell `cell` (0-based).
    pub fn a_site(&self, cell: usize) -> usize {
        2 * cell
    }

    pub fn b_site(&self, cell: usize) -> usize {
        2 * cell + 1
    }

    /// Human label of a 0-based site index, e.g. `a1` or `b10`.
    pub fn label(&self, site: usize) -> String {
        let kind = if site % 2 == 0 { 'a' } else { 'b' };
        format!("{kind}{}", site / 2 + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioTag {
    /// Plain SSH chain.
    BareSsh,
    /// Staggered on-site potentials `Va = V sinθ`, `Vb = -V sinθ`.
    RiceMele,
    /// Constant next-nearest-neighbour hoppings.
    FixedNnn,
    /// Staggered NNN hoppings `T1 = -V sinθ`, `T2 = V sinθ`.
    StaggeredNnn,
    /// `Va = -sinθ`, `Vb = sinθ`, `T1 = 1 + cosθ`, `T2 = 0`.
    BeamSplitter,
    /// `T1 = 1 + cosθ` alone: the first two sites act as one super-site.
    SuperSitePrecursor,
}

impl ScenarioTag {
    pub const ALL: [ScenarioTag; 6] = [
        ScenarioTag::BareSsh,
        ScenarioTag::RiceMele,
        ScenarioTag::FixedNnn,
        ScenarioTag::StaggeredNnn,
        ScenarioTag::BeamSplitter,
        ScenarioTag::SuperSitePrecursor,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ScenarioTag::BareSsh => "bare_ssh",
            ScenarioTag::RiceMele => "rice_mele",
            ScenarioTag::FixedNnn => "fixed_nnn",
            ScenarioTag::StaggeredNnn => "staggered_nnn",
            ScenarioTag::BeamSplitter => "beam_splitter",
            ScenarioTag::SuperSitePrecursor => "super_site_precursor",
        }
    }
}

impl fmt::Display for ScenarioTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioTag::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = ScenarioTag::ALL.iter().map(|t| t.name()).collect();
                Error::config("scenario.tag", format!("unknown scenario `{s}` (expected one of {})", known.join(", ")))
            })
    }
}

/// A modulation protocol: which couplings follow θ and how strongly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub tag: ScenarioTag,
    /// Modulation strength `V` (RiceMele and StaggeredNNN).
    pub strength: f64,
    /// a–a hopping for FixedNNN.
    pub fixed_t1: f64,
    /// b–b hopping for FixedNNN.
    pub fixed_t2: f64,
}

impl Scenario {
    pub fn new(tag: ScenarioTag) -> Self {
        Scenario { tag, strength: 1.0, fixed_t1: 0.0, fixed_t2: 0.0 }
    }

    pub fn bare_ssh() -> Self {
        Self::new(ScenarioTag::BareSsh)
    }

    pub fn rice_mele(strength: f64) -> Self {
        Scenario { strength, ..Self::new(ScenarioTag::RiceMele) }
    }

    pub fn fixed_nnn(t1: f64, t2: f64) -> Self {
        Scenario { fixed_t1: t1, fixed_t2: t2, ..Self::new(ScenarioTag::FixedNnn) }
    }

    pub fn staggered_nnn(strength: f64) -> Self {
        Scenario { strength, ..Self::new(ScenarioTag::StaggeredNnn) }
    }

    pub fn beam_splitter() -> Self {
        Self::new(ScenarioTag::BeamSplitter)
    }

    pub fn super_site_precursor() -> Self {
        Self::new(ScenarioTag::SuperSitePrecursor)
    }

    /// Every built-in profile has the form `c0 + c1 cosθ + c2 sinθ`; this
    /// returns the three coefficient sets (their `theta` field is unused).
    pub fn harmonics(&self) -> Harmonics {
        let v = self.strength;
        // nearest-neighbour part shared by all scenarios: t1 = 1 - cos, t2 = 1 + cos
        let mut constant = CouplingSet { t1: 1.0, t2: 1.0, ..CouplingSet::ZERO };
        let mut cos = CouplingSet { t1: -1.0, t2: 1.0, ..CouplingSet::ZERO };
        let mut sin = CouplingSet::ZERO;
        match self.tag {
            ScenarioTag::BareSsh => {}
            ScenarioTag::RiceMele => {
                sin.va = v;
                sin.vb = -v;
            }
            ScenarioTag::FixedNnn => {
                constant.nnn_a = self.fixed_t1;
                constant.nnn_b = self.fixed_t2;
            }
            ScenarioTag::StaggeredNnn => {
                sin.nnn_a = -v;
                sin.nnn_b = v;
            }
            ScenarioTag::BeamSplitter => {
                sin.va = -1.0;
                sin.vb = 1.0;
                constant.nnn_a = 1.0;
                cos.nnn_a = 1.0;
            }
            ScenarioTag::SuperSitePrecursor => {
                constant.nnn_a = 1.0;
                cos.nnn_a = 1.0;
            }
        }
        Harmonics { constant, cos, sin }
    }

    pub fn validate(&self) -> Result<()> {
        for (key, v) in [
            ("scenario.strength", self.strength),
            ("scenario.fixed_t1", self.fixed_t1),
            ("scenario.fixed_t2", self.fixed_t2),
        ] {
            if !v.is_finite() {
                return Err(Error::config(key, "must be finite"));
            }
        }
        Ok(())
    }
}

/// The six couplings of one Hamiltonian instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingSet {
    pub theta: f64,
    /// Intra-cell hopping `a_n - b_n`.
    pub t1: f64,
    /// Inter-cell hopping `b_n - a_{n+1}`.
    pub t2: f64,
    pub va: f64,
    pub vb: f64,
    /// NNN hopping `a_n - a_{n+1}` (T1).
    pub nnn_a: f64,
    /// NNN hopping `b_n - b_{n+1}` (T2).
    pub nnn_b: f64,
}

impl CouplingSet {
    pub const ZERO: CouplingSet =
        CouplingSet { theta: 0.0, t1: 0.0, t2: 0.0, va: 0.0, vb: 0.0, nnn_a: 0.0, nnn_b: 0.0 };

    pub fn is_finite(&self) -> bool {
        [self.theta, self.t1, self.t2, self.va, self.vb, self.nnn_a, self.nnn_b]
            .iter()
            .all(|v| v.is_finite())
    }
}

/// Fourier coefficients of a coupling profile, see [`Scenario::harmonics`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonics {
    pub constant: CouplingSet,
    pub cos: CouplingSet,
    pub sin: CouplingSet,
}

impl Harmonics {
    pub fn at(&self, theta: f64) -> CouplingSet {
        let (s, c) = theta.sin_cos();
        let f = |k: f64, a: f64, b: f64| k + a * c + b * s;
        let (k, a, b) = (&self.constant, &self.cos, &self.sin);
        CouplingSet {
            theta,
            t1: f(k.t1, a.t1, b.t1),
            t2: f(k.t2, a.t2, b.t2),
            va: f(k.va, a.va, b.va),
            vb: f(k.vb, a.vb, b.vb),
            nnn_a: f(k.nnn_a, a.nnn_a, b.nnn_a),
            nnn_b: f(k.nnn_b, a.nnn_b, b.nnn_b),
        }
    }
}

/// Reduce θ into `[0, 2π]`; values already inside are returned untouched.
pub fn reduce_theta(theta: f64) -> f64 {
    if (0.0..=TAU).contains(&theta) {
        theta
    } else {
        theta.rem_euclid(TAU)
    }
}

pub fn coupling_profile(scenario: &Scenario, theta: f64) -> CouplingSet {
    scenario.harmonics().at(reduce_theta(theta))
}

/// Dense real-symmetric Hamiltonian on the `2N` chain sites.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(DMatrix<f64>);

impl HermitianMatrix {
    pub fn zeros(dim: usize) -> Self {
        HermitianMatrix(DMatrix::zeros(dim, dim))
    }

    /// Wraps a matrix after checking it is square and exactly symmetric.
    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::numeric(format!("matrix is {}x{}, not square", m.nrows(), m.ncols())));
        }
        let n = m.nrows();
        for i in 0..n {
            for j in 0..i {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::numeric(format!("matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(HermitianMatrix(m))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    /// Adds `value` to both `(i, j)` and `(j, i)` (once on the diagonal).
    pub(crate) fn add_symmetric(&mut self, i: usize, j: usize, value: f64) {
        self.0[(i, j)] += value;
        if i != j {
            self.0[(j, i)] += value;
        }
    }

    pub fn max_abs_diff(&self, other: &HermitianMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(other.0.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// Couplings resolved bond by bond. This is the general form the lattice
/// builder consumes; uniform profiles and disordered samples both map onto it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BondCouplings {
    /// On-site energy per site (`2N`).
    pub onsite: Vec<f64>,
    /// Nearest-neighbour bond `i - (i+1)` (`2N - 1`), alternating t1, t2.
    pub nn: Vec<f64>,
    /// a–a bonds `a_n - a_{n+1}` (`N - 1`).
    pub nnn_a: Vec<f64>,
    /// b–b bonds `b_n - b_{n+1}` (`N - 1`).
    pub nnn_b: Vec<f64>,
}

impl BondCouplings {
    pub fn uniform(spec: &ChainSpec, c: &CouplingSet) -> Self {
        let n = spec.n_cells();
        let onsite = (0..spec.n_sites()).map(|i| if i % 2 == 0 { c.va } else { c.vb }).collect();
        let nn = (0..spec.n_sites() - 1).map(|i| if i % 2 == 0 { c.t1 } else { c.t2 }).collect();
        BondCouplings { onsite, nn, nnn_a: vec![c.nnn_a; n - 1], nnn_b: vec![c.nnn_b; n - 1] }
    }

    pub fn zeros(spec: &ChainSpec) -> Self {
        Self::uniform(spec, &CouplingSet::ZERO)
    }

    pub fn n_cells(&self) -> usize {
        self.onsite.len() / 2
    }

    pub fn to_hamiltonian(&self) -> HermitianMatrix {
        let n_sites = self.onsite.len();
        let mut h = HermitianMatrix::zeros(n_sites);
        for (i, &v) in self.onsite.iter().enumerate() {
            h.add_symmetric(i, i, v);
        }
        for (i, &t) in self.nn.iter().enumerate() {
            h.add_symmetric(i, i + 1, t);
        }
        for (n, &t) in self.nnn_a.iter().enumerate() {
            h.add_symmetric(2 * n, 2 * n + 2, t);
        }
        for (n, &t) in self.nnn_b.iter().enumerate() {
            h.add_symmetric(2 * n + 1, 2 * n + 3, t);
        }
        h
    }
}

pub fn build_hamiltonian(spec: &ChainSpec, c: &CouplingSet) -> HermitianMatrix {
    BondCouplings::uniform(spec, c).to_hamiltonian()
}

/// `H(θ) = H0 + Hc cosθ + Hs sinθ` in matrix form, with an optional static
/// offset folded into `H0` (used for quenched disorder).
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianPath {
    pub(crate) constant: DMatrix<f64>,
    pub(crate) cos: DMatrix<f64>,
    pub(crate) sin: DMatrix<f64>,
}

impl HamiltonianPath {
    pub fn new(spec: &ChainSpec, scenario: &Scenario) -> Self {
        let hm = scenario.harmonics();
        HamiltonianPath {
            constant: build_hamiltonian(spec, &hm.constant).into_matrix(),
            cos: build_hamiltonian(spec, &hm.cos).into_matrix(),
            sin: build_hamiltonian(spec, &hm.sin).into_matrix(),
        }
    }

    /// Adds a θ-independent term to the path.
    pub fn with_offset(mut self, offset: &HermitianMatrix) -> Self {
        self.constant += offset.matrix();
        self
    }

    pub fn dim(&self) -> usize {
        self.constant.nrows()
    }

    pub fn at(&self, theta: f64) -> DMatrix<f64> {
        let (s, c) = theta.sin_cos();
        &self.constant + &self.cos * c + &self.sin * s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rejects_short_chains() {
        assert!(ChainSpec::new(1).is_err());
        assert_eq!(ChainSpec::new(2).unwrap().n_sites(), 4);
    }

    #[test]
    fn bare_ssh_at_zero() {
        let c = coupling_profile(&Scenario::bare_ssh(), 0.0);
        assert_eq!((c.t1, c.t2, c.va, c.vb, c.nnn_a, c.nnn_b), (0.0, 2.0, 0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn rice_mele_quarter_cycle() {
        let c = coupling_profile(&Scenario::rice_mele(1.0), PI / 2.0);
        assert!((c.t1 - 1.0).abs() < 1e-15 && (c.t2 - 1.0).abs() < 1e-15);
        assert_eq!((c.va, c.vb), (1.0, -1.0));
    }

    #[test]
    fn beam_splitter_profile() {
        let th = 1.85 * PI;
        let c = coupling_profile(&Scenario::beam_splitter(), th);
        assert_eq!(c.t1, 1.0 - th.cos());
        assert_eq!(c.t2, 1.0 + th.cos());
        assert_eq!(c.nnn_a, c.t2);
        assert_eq!(c.va, -th.sin());
        assert!(c.va > 0.0);
        assert_eq!(c.vb, th.sin());
        assert_eq!(c.nnn_b, 0.0);
    }

    #[test]
    fn every_profile_keeps_nn_form() {
        for tag in ScenarioTag::ALL {
            for k in 0..=16 {
                let th = k as f64 * PI / 8.0;
                let c = coupling_profile(&Scenario::new(tag), th);
                assert_eq!(c.t1, 1.0 - th.cos());
                assert_eq!(c.t2, 1.0 + th.cos());
            }
        }
    }

    #[test]
    fn theta_is_reduced() {
        let s = Scenario::rice_mele(1.0);
        let a = coupling_profile(&s, 0.3);
        let b = coupling_profile(&s, 0.3 + 3.0 * TAU);
        assert!((a.va - b.va).abs() < 1e-12);
        assert!((b.theta - 0.3).abs() < 1e-12);
        assert_eq!(reduce_theta(TAU), TAU);
        assert!((reduce_theta(-0.5) - (TAU - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn unknown_tag_is_config_error() {
        let err = "ssh".parse::<ScenarioTag>().unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert_eq!("beam_splitter".parse::<ScenarioTag>().unwrap(), ScenarioTag::BeamSplitter);
    }

    #[test]
    fn layout_of_couplings() {
        let spec = ChainSpec::new(3).unwrap();
        let c = CouplingSet { theta: 0.0, t1: 1.0, t2: 2.0, va: 3.0, vb: 4.0, nnn_a: 5.0, nnn_b: 6.0 };
        let h = build_hamiltonian(&spec, &c);
        assert_eq!(h.get(0, 0), 3.0);
        assert_eq!(h.get(1, 1), 4.0);
        assert_eq!(h.get(0, 1), 1.0);
        assert_eq!(h.get(1, 2), 2.0);
        assert_eq!(h.get(0, 2), 5.0);
        assert_eq!(h.get(1, 3), 6.0);
        assert_eq!(h.get(3, 5), 6.0);
        assert_eq!(h.get(0, 5), 0.0);
        assert_eq!(h.get(5, 0), 0.0);
    }

    #[test]
    fn two_cell_dimer_limits() {
        let spec = ChainSpec::new(2).unwrap();
        let h = build_hamiltonian(&spec, &coupling_profile(&Scenario::bare_ssh(), 0.0));
        let nonzero: Vec<_> =
            (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|&(i, j)| h.get(i, j) != 0.0).collect();
        assert_eq!(nonzero, vec![(1, 2), (2, 1)]);
        assert_eq!(h.get(1, 2), 2.0);
    }

    #[test]
    fn path_matches_direct_build() {
        let spec = ChainSpec::new(4).unwrap();
        for tag in ScenarioTag::ALL {
            let s = Scenario { strength: 0.7, fixed_t1: -0.5, fixed_t2: 0.5, tag };
            let path = HamiltonianPath::new(&spec, &s);
            for th in [0.0, 0.4, 2.0, 5.5] {
                let direct = build_hamiltonian(&spec, &coupling_profile(&s, th));
                let diff = (path.at(th) - direct.matrix()).abs().max();
                assert!(diff < 1e-14, "{tag} {th} {diff}");
            }
        }
    }

    #[test]
    fn labels() {
        let spec = ChainSpec::new(10).unwrap();
        assert_eq!(spec.label(0), "a1");
        assert_eq!(spec.label(19), "b10");
    }
}
