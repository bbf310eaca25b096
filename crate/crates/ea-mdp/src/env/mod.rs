//! Constructors for the bundled experimental systems: a two-site hopper with
//! a fixed interference-sensitive outcome family, and a rectangular lattice
//! with per-site evidence states and a phase-parameterized outcome family.

mod config;

pub use config::{
    load_config, EaAssignmentConfig, EnvironmentConfig, LatticeConfig, TwoSiteConfig,
};

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use thiserror::Error;

use crate::mdp::{EaMdp, EaMdpBuilder, MdpError};
use crate::quantum::{OutcomeMode, OutcomeSet, QuantumError, RewardSpec, StateVector};

#[derive(Debug, Error)]
pub enum EnvError {
    #[error("cannot read config file `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("unknown kind `{kind}`: expected `two_site` or `lattice`")]
    UnknownKind { kind: String },

    #[error("`{key}`: squared norm is {norm_sqr}, expected 1 within 1e-9")]
    NotNormalized { key: String, norm_sqr: f64 },

    #[error("`{key}`: {msg}")]
    Invalid { key: String, msg: String },

    #[error(transparent)]
    Quantum(#[from] QuantumError),

    #[error(transparent)]
    Mdp(#[from] MdpError),
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The fixed outcome family of the two-site system:
/// {(∣0⟩+i∣1⟩)/√2, (∣0⟩−i∣1⟩)/√2, ∣2⟩}.
///
/// The first two outcomes mix the ∣0⟩ and ∣1⟩ evidence bases with opposite
/// relative phases, so amplitude phases interfere in their probabilities.
pub fn two_site_outcomes() -> OutcomeSet {
    let s = FRAC_1_SQRT_2;
    OutcomeSet::new(
        3,
        vec![
            StateVector::new(vec![c(s, 0.0), c(0.0, s), c(0.0, 0.0)]).expect("finite"),
            StateVector::new(vec![c(s, 0.0), c(0.0, -s), c(0.0, 0.0)]).expect("finite"),
            StateVector::basis(3, 2),
        ],
        OutcomeMode::EaSeparated,
    )
    .expect("the two-site outcome family is orthonormal and complete")
}

/// Parameters of the two-site system: one swap action, two sites with
/// three-dimensional evidence states, no terminals.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSiteSpec {
    pub c1: StateVector,
    pub c2: StateVector,
    pub rewards: RewardSpec,
    pub gamma: f64,
}

impl Default for TwoSiteSpec {
    /// The bundled configuration: c₁ = (2/3, 2/3, 1/3), c₂ = (2/3, 1/3, 2/3),
    /// rewards (−1, 1, 2), γ = 0.8.
    fn default() -> Self {
        Self {
            c1: StateVector::from_reals(&[2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0]).expect("unit"),
            c2: StateVector::from_reals(&[2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0]).expect("unit"),
            rewards: RewardSpec::new(vec![-1.0, 1.0, 2.0]).expect("finite"),
            gamma: 0.8,
        }
    }
}

impl TwoSiteSpec {
    pub fn new(
        c1: StateVector,
        c2: StateVector,
        rewards: RewardSpec,
        gamma: f64,
    ) -> Result<Self, EnvError> {
        let spec = Self {
            c1,
            c2,
            rewards,
            gamma,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), EnvError> {
        for (key, v) in [("c1", &self.c1), ("c2", &self.c2)] {
            if v.dim() != 3 {
                return Err(EnvError::Invalid {
                    key: key.into(),
                    msg: format!("expected 3 amplitudes, got {}", v.dim()),
                });
            }
            if !v.is_normalized() {
                return Err(EnvError::NotNormalized {
                    key: key.into(),
                    norm_sqr: v.norm_sqr(),
                });
            }
        }
        if self.rewards.len() != 3 {
            return Err(EnvError::Invalid {
                key: "rewards".into(),
                msg: format!("expected 3 outcome rewards, got {}", self.rewards.len()),
            });
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(EnvError::Invalid {
                key: "gamma".into(),
                msg: format!("must lie in [0, 1), got {}", self.gamma),
            });
        }
        Ok(())
    }

    /// Applies phase factors e^{iθ₁}, e^{iθ₂} to the second amplitude of c₁
    /// and c₂ respectively. Magnitudes are untouched, so normalization holds
    /// for every angle.
    pub fn with_phases(mut self, theta1: f64, theta2: f64) -> Self {
        self.c1 = self.c1.with_phase(1, theta1);
        self.c2 = self.c2.with_phase(1, theta2);
        self
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    /// Replaces the reward of outcome `k`.
    pub fn with_reward(mut self, k: usize, value: f64) -> Result<Self, EnvError> {
        if k >= self.rewards.len() {
            return Err(EnvError::Invalid {
                key: "rewards".into(),
                msg: format!("index {k} out of range"),
            });
        }
        self.rewards = self.rewards.with_reward(k, value)?;
        Ok(self)
    }
}

/// Builds the two-site process: states {s₁, s₂}, a single deterministic swap
/// action, the [`two_site_outcomes`] family, and no terminal states.
pub fn build_two_site(spec: &TwoSiteSpec) -> Result<EaMdp, EnvError> {
    spec.validate()?;
    let mdp = EaMdpBuilder::new(2, 1)
        .gamma(spec.gamma)
        .deterministic_transition(0, 0, 1)
        .deterministic_transition(1, 0, 0)
        .ea_state(0, spec.c1.clone())
        .ea_state(1, spec.c2.clone())
        .outcomes(two_site_outcomes())
        .rewards(spec.rewards.clone())
        .build()?;
    Ok(mdp)
}

/// Grid moves in action-index order; ties in planning and learning resolve
/// toward the lowest index, i.e. `Up` first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeAction {
    Up = 0,
    Down = 1,
    Left = 2,
    Right = 3,
}

impl LatticeAction {
    pub const ALL: [LatticeAction; 4] = [
        LatticeAction::Up,
        LatticeAction::Down,
        LatticeAction::Left,
        LatticeAction::Right,
    ];

    /// (dx, dy) with x rightward and y upward.
    pub fn delta(self) -> (isize, isize) {
        match self {
            LatticeAction::Up => (0, 1),
            LatticeAction::Down => (0, -1),
            LatticeAction::Left => (-1, 0),
            LatticeAction::Right => (1, 0),
        }
    }

    pub fn letter(self) -> char {
        match self {
            LatticeAction::Up => 'U',
            LatticeAction::Down => 'D',
            LatticeAction::Left => 'L',
            LatticeAction::Right => 'R',
        }
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }
}

/// The block-rotation outcome family over four evidence bases:
///
/// { cosφ₁∣0⟩ + i·sinφ₁∣1⟩,  i·sinφ₁∣0⟩ + cosφ₁∣1⟩,
///   cosφ₂∣2⟩ + i·sinφ₂∣3⟩,  i·sinφ₂∣2⟩ + cosφ₂∣3⟩ }
///
/// Each vector is unit-normalized as written, and the family is orthonormal
/// and complete for every (φ₁, φ₂). At φ₁ = φ₂ = 0 it degenerates to the
/// standard basis {∣0⟩, ∣1⟩, ∣2⟩, ∣3⟩}, where interference vanishes.
pub fn lattice_outcome_family(phi1: f64, phi2: f64) -> OutcomeSet {
    let (s1, c1) = phi1.sin_cos();
    let (s2, c2v) = phi2.sin_cos();
    let z = Complex64::ZERO;
    OutcomeSet::new(
        4,
        vec![
            StateVector::new(vec![c(c1, 0.0), c(0.0, s1), z, z]).expect("finite"),
            StateVector::new(vec![c(0.0, s1), c(c1, 0.0), z, z]).expect("finite"),
            StateVector::new(vec![z, z, c(c2v, 0.0), c(0.0, s2)]).expect("finite"),
            StateVector::new(vec![z, z, c(0.0, s2), c(c2v, 0.0)]).expect("finite"),
        ],
        OutcomeMode::EaSeparated,
    )
    .expect("block rotations are orthonormal and complete for every angle")
}

/// The evidence assignments of the bundled 5x5 lattice, keyed by (x, y):
///
/// * (4,1): (∣1⟩ + ∣3⟩)/√2
/// * (3,3): (∣2⟩ + i∣3⟩)/√2
/// * (5,4): (2∣0⟩ + 4∣1⟩ + ∣2⟩ + 2∣3⟩)/5
/// * (1,5): (∣1⟩ + i∣2⟩)/√2
/// * (5,5): (∣0⟩ + ∣1⟩ + i∣2⟩)/√5 + √(2/5)∣3⟩
///
/// Unlisted sites default to the pure evidence state ∣0⟩.
pub fn default_ea_assignments() -> BTreeMap<(usize, usize), StateVector> {
    let s = FRAC_1_SQRT_2;
    let r5 = 1.0 / 5.0f64.sqrt();
    let z = Complex64::ZERO;
    let mut map = BTreeMap::new();
    map.insert(
        (4, 1),
        StateVector::new(vec![z, c(s, 0.0), z, c(s, 0.0)]).expect("unit"),
    );
    map.insert(
        (3, 3),
        StateVector::new(vec![z, z, c(s, 0.0), c(0.0, s)]).expect("unit"),
    );
    map.insert(
        (5, 4),
        StateVector::from_reals(&[0.4, 0.8, 0.2, 0.4]).expect("unit"),
    );
    map.insert(
        (1, 5),
        StateVector::new(vec![z, c(s, 0.0), c(0.0, s), z]).expect("unit"),
    );
    map.insert(
        (5, 5),
        StateVector::new(vec![
            c(r5, 0.0),
            c(r5, 0.0),
            c(0.0, r5),
            c((2.0f64 / 5.0).sqrt(), 0.0),
        ])
        .expect("unit"),
    );
    map
}

/// Parameters of the lattice system.
///
/// Coordinates are 1-based (x, y) with x rightward and y upward; states are
/// indexed row-major from (1, 1). The goal site is terminal: entering it pays
/// the expected reward of its evidence state, then the episode ends.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    pub width: usize,
    pub height: usize,
    pub obstacles: BTreeSet<(usize, usize)>,
    pub goal: (usize, usize),
    pub start: (usize, usize),
    pub ea_assignments: BTreeMap<(usize, usize), StateVector>,
    pub phi1: f64,
    pub phi2: f64,
    pub rewards: RewardSpec,
    pub gamma: f64,
}

impl Default for LatticeSpec {
    /// The bundled 5x5 layout: obstacles at (2,2) and (4,4), goal (5,5),
    /// start (1,1), the [`default_ea_assignments`], rewards (−1, −2, −3, 1),
    /// γ = 0.9, φ₁ = φ₂ = 0.
    fn default() -> Self {
        Self {
            width: 5,
            height: 5,
            obstacles: BTreeSet::from([(2, 2), (4, 4)]),
            goal: (5, 5),
            start: (1, 1),
            ea_assignments: default_ea_assignments(),
            phi1: 0.0,
            phi2: 0.0,
            rewards: RewardSpec::new(vec![-1.0, -2.0, -3.0, 1.0]).expect("finite"),
            gamma: 0.9,
        }
    }
}

impl LatticeSpec {
    pub fn in_bounds(&self, site: (usize, usize)) -> bool {
        (1..=self.width).contains(&site.0) && (1..=self.height).contains(&site.1)
    }

    /// Row-major state index of a site, counting from (1, 1).
    pub fn site_index(&self, site: (usize, usize)) -> usize {
        (site.1 - 1) * self.width + (site.0 - 1)
    }

    /// Inverse of [`LatticeSpec::site_index`].
    pub fn site_of_index(&self, index: usize) -> (usize, usize) {
        (index % self.width + 1, index / self.width + 1)
    }

    pub fn start_index(&self) -> usize {
        self.site_index(self.start)
    }

    pub fn goal_index(&self) -> usize {
        self.site_index(self.goal)
    }

    /// The evidence state of a site: its assignment, or ∣0⟩ by default.
    pub fn ea_state_at(&self, site: (usize, usize)) -> StateVector {
        self.ea_assignments
            .get(&site)
            .cloned()
            .unwrap_or_else(|| StateVector::basis(4, 0))
    }

    pub fn validate(&self) -> Result<(), EnvError> {
        if self.width == 0 || self.height == 0 {
            return Err(EnvError::Invalid {
                key: "width".into(),
                msg: "lattice dimensions must be positive".into(),
            });
        }
        for (key, site) in [("goal", self.goal), ("start", self.start)] {
            if !self.in_bounds(site) {
                return Err(EnvError::Invalid {
                    key: key.into(),
                    msg: format!("site {site:?} is outside the {}x{} lattice", self.width, self.height),
                });
            }
        }
        for &site in &self.obstacles {
            if !self.in_bounds(site) {
                return Err(EnvError::Invalid {
                    key: "obstacles".into(),
                    msg: format!("site {site:?} is outside the {}x{} lattice", self.width, self.height),
                });
            }
        }
        if self.obstacles.contains(&self.goal) {
            return Err(EnvError::Invalid {
                key: "goal".into(),
                msg: format!("goal {:?} lies on an obstacle", self.goal),
            });
        }
        if self.obstacles.contains(&self.start) {
            return Err(EnvError::Invalid {
                key: "start".into(),
                msg: format!("start {:?} lies on an obstacle", self.start),
            });
        }
        if self.start == self.goal {
            return Err(EnvError::Invalid {
                key: "start".into(),
                msg: "start and goal must differ".into(),
            });
        }
        for (site, psi) in &self.ea_assignments {
            let key = format!("ea_assignments[{site:?}]");
            if !self.in_bounds(*site) {
                return Err(EnvError::Invalid {
                    key,
                    msg: "site is outside the lattice".into(),
                });
            }
            if psi.dim() != 4 {
                return Err(EnvError::Invalid {
                    key,
                    msg: format!("expected 4 amplitudes, got {}", psi.dim()),
                });
            }
            if !psi.is_normalized() {
                return Err(EnvError::NotNormalized {
                    key,
                    norm_sqr: psi.norm_sqr(),
                });
            }
        }
        if self.rewards.len() != 4 {
            return Err(EnvError::Invalid {
                key: "rewards".into(),
                msg: format!("expected 4 outcome rewards, got {}", self.rewards.len()),
            });
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(EnvError::Invalid {
                key: "gamma".into(),
                msg: format!("must lie in [0, 1), got {}", self.gamma),
            });
        }
        Ok(())
    }
}

/// Builds the lattice process: `width·height` states, four move actions with
/// off-grid and into-obstacle moves masked out, deterministic transitions,
/// and the goal as the single terminal state.
pub fn build_lattice(spec: &LatticeSpec) -> Result<EaMdp, EnvError> {
    spec.validate()?;
    let n = spec.width * spec.height;
    let mut builder = EaMdpBuilder::new(n, 4)
        .gamma(spec.gamma)
        .outcomes(lattice_outcome_family(spec.phi1, spec.phi2))
        .rewards(spec.rewards.clone())
        .terminal(spec.goal_index());

    for y in 1..=spec.height {
        for x in 1..=spec.width {
            let site = (x, y);
            let s = spec.site_index(site);
            builder = builder.ea_state(s, spec.ea_state_at(site));
            if site == spec.goal {
                continue;
            }
            let mut moves = 0;
            for action in LatticeAction::ALL {
                let (dx, dy) = action.delta();
                let target = (x.wrapping_add_signed(dx), y.wrapping_add_signed(dy));
                if !spec.in_bounds(target) || spec.obstacles.contains(&target) {
                    continue;
                }
                builder =
                    builder.deterministic_transition(s, action as usize, spec.site_index(target));
                moves += 1;
            }
            if moves == 0 {
                return Err(EnvError::Invalid {
                    key: "obstacles".into(),
                    msg: format!("non-goal site {site:?} has no available moves"),
                });
            }
        }
    }

    Ok(builder.build()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{measurement_probability, validate_outcome_set};
    use std::f64::consts::{PI, TAU};

    #[test]
    fn two_site_reward_table_matches_hand_values() {
        let mdp = build_two_site(&TwoSiteSpec::default()).unwrap();
        let r = mdp.state_reward_table();
        assert!((r[0] - 2.0 / 9.0).abs() < 1e-12);
        assert!((r[1] - 8.0 / 9.0).abs() < 1e-12);
        assert_eq!(mdp.n_states(), 2);
        assert_eq!(mdp.n_actions(), 1);
        assert!(mdp.terminals().is_empty());
        assert_eq!(mdp.transition_row(0, 0)[1], 1.0);
        assert_eq!(mdp.transition_row(1, 0)[0], 1.0);
    }

    #[test]
    fn phases_preserve_normalization_and_zero_is_identity() {
        for theta in [0.0, 0.4, PI, 5.1, TAU] {
            let spec = TwoSiteSpec::default().with_phases(theta, theta / 2.0);
            assert!(spec.c1.is_normalized());
            assert!(spec.c2.is_normalized());
        }
        let unphased = TwoSiteSpec::default();
        let zero_phase = TwoSiteSpec::default().with_phases(0.0, 0.0);
        assert_eq!(unphased, zero_phase);
    }

    #[test]
    fn outcome_family_at_zero_is_the_standard_basis() {
        let set = lattice_outcome_family(0.0, 0.0);
        for (j, omega) in set.iter().enumerate() {
            assert_eq!(omega, &StateVector::basis(4, j));
        }
    }

    #[test]
    fn outcome_family_at_half_pi_swaps_the_pair() {
        let set = lattice_outcome_family(PI / 2.0, 0.0);
        // First pair becomes {i|1>, i|0>}: probabilities against any state
        // are swapped relative to phi1 = 0.
        let psi = StateVector::from_reals(&[0.6, 0.8, 0.0, 0.0]).unwrap();
        let base = lattice_outcome_family(0.0, 0.0);
        let p0 = measurement_probability(&set.outcomes()[0], &psi).unwrap();
        let p1 = measurement_probability(&set.outcomes()[1], &psi).unwrap();
        let b0 = measurement_probability(&base.outcomes()[0], &psi).unwrap();
        let b1 = measurement_probability(&base.outcomes()[1], &psi).unwrap();
        assert!((p0 - b1).abs() < 1e-12);
        assert!((p1 - b0).abs() < 1e-12);
    }

    #[test]
    fn outcome_family_is_complete_for_every_angle() {
        for i in 0..=16 {
            for j in 0..=8 {
                let phi1 = TAU * i as f64 / 16.0;
                let phi2 = TAU * j as f64 / 8.0;
                let set = lattice_outcome_family(phi1, phi2);
                let report = validate_outcome_set(4, set.outcomes()).unwrap();
                assert!(report.is_valid());
                assert!(report.max_violation < 1e-12);
            }
        }
    }

    #[test]
    fn outcome_family_is_tau_periodic_in_probabilities() {
        let psi = StateVector::new(vec![
            Complex64::new(0.5, 0.1),
            Complex64::new(-0.3, 0.4),
            Complex64::new(0.2, -0.2),
            Complex64::new(0.1, 0.0),
        ])
        .unwrap()
        .renormalized()
        .unwrap();
        for phi in [0.0, 0.9, 2.4] {
            let a = lattice_outcome_family(phi, phi / 3.0);
            let b = lattice_outcome_family(phi + TAU, phi / 3.0 + TAU);
            for (oa, ob) in a.iter().zip(b.iter()) {
                let pa = measurement_probability(oa, &psi).unwrap();
                let pb = measurement_probability(ob, &psi).unwrap();
                assert!((pa - pb).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bundled_assignments_have_unit_norms() {
        // Literal squared-norm identities of each decorated site.
        let map = default_ea_assignments();
        let expected: &[((usize, usize), &[f64])] = &[
            ((4, 1), &[0.5, 0.5]),
            ((3, 3), &[0.5, 0.5]),
            ((5, 4), &[0.16, 0.64, 0.04, 0.16]),
            ((1, 5), &[0.5, 0.5]),
            ((5, 5), &[0.2, 0.2, 0.2, 0.4]),
        ];
        for (site, parts) in expected {
            let psi = &map[site];
            let total: f64 = parts.iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
            assert!((psi.norm_sqr() - 1.0).abs() < 1e-12, "site {site:?}");
            assert!(psi.is_normalized());
        }
    }

    #[test]
    fn lattice_rewards_at_zero_phase_follow_the_evidence_weights() {
        let spec = LatticeSpec::default();
        let mdp = build_lattice(&spec).unwrap();
        let r = mdp.state_reward_table();
        let tol = 1e-12;
        assert!((r[spec.site_index((4, 1))] - (-0.5)).abs() < tol);
        assert!((r[spec.site_index((3, 3))] - (-1.0)).abs() < tol);
        assert!((r[spec.site_index((5, 4))] - (-1.4)).abs() < tol);
        assert!((r[spec.site_index((1, 5))] - (-2.5)).abs() < tol);
        assert!((r[spec.site_index((5, 5))] - (-0.8)).abs() < tol);
        // Undecorated sites carry |0> and pay the first outcome reward.
        assert!((r[spec.site_index((2, 3))] - (-1.0)).abs() < tol);
        assert!((r[spec.site_index((1, 1))] - (-1.0)).abs() < tol);
    }

    #[test]
    fn corner_sites_have_two_moves() {
        let spec = LatticeSpec::default();
        let mdp = build_lattice(&spec).unwrap();
        let corner = spec.site_index((1, 1));
        let actions: Vec<usize> = mdp.available_actions(corner).collect();
        assert_eq!(
            actions,
            vec![LatticeAction::Up as usize, LatticeAction::Right as usize]
        );
    }

    #[test]
    fn no_transition_targets_an_obstacle_or_leaves_the_grid() {
        let spec = LatticeSpec::default();
        let mdp = build_lattice(&spec).unwrap();
        let blocked: Vec<usize> = spec.obstacles.iter().map(|&s| spec.site_index(s)).collect();
        for s in 0..mdp.n_states() {
            for a in mdp.available_actions(s) {
                let row = mdp.transition_row(s, a);
                assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-15);
                for &b in &blocked {
                    assert_eq!(row[b], 0.0, "state {s} action {a} reaches an obstacle");
                }
            }
        }
    }

    #[test]
    fn goal_is_the_only_terminal() {
        let spec = LatticeSpec::default();
        let mdp = build_lattice(&spec).unwrap();
        assert!(mdp.is_terminal(spec.goal_index()));
        assert_eq!(mdp.terminals().len(), 1);
    }

    #[test]
    fn spec_validation_names_the_offending_key() {
        let mut bad = LatticeSpec::default();
        bad.obstacles.insert((5, 5));
        match bad.validate() {
            Err(EnvError::Invalid { key, .. }) => assert_eq!(key, "goal"),
            other => panic!("expected Invalid, got {other:?}"),
        }

        let mut bad = LatticeSpec::default();
        bad.ea_assignments.insert(
            (2, 3),
            StateVector::from_reals(&[1.0, 1.0, 0.0, 0.0]).unwrap(),
        );
        match bad.validate() {
            Err(EnvError::NotNormalized { key, norm_sqr }) => {
                assert!(key.contains("(2, 3)"));
                assert!((norm_sqr - 2.0).abs() < 1e-12);
            }
            other => panic!("expected NotNormalized, got {other:?}"),
        }

        let bad = LatticeSpec {
            goal: (6, 5),
            ..LatticeSpec::default()
        };
        assert!(matches!(bad.validate(), Err(EnvError::Invalid { key, .. }) if key == "goal"));
    }

    #[test]
    fn site_indexing_is_row_major_from_the_origin() {
        let spec = LatticeSpec::default();
        assert_eq!(spec.site_index((1, 1)), 0);
        assert_eq!(spec.site_index((5, 1)), 4);
        assert_eq!(spec.site_index((1, 2)), 5);
        assert_eq!(spec.site_index((5, 5)), 24);
        for idx in 0..25 {
            assert_eq!(spec.site_index(spec.site_of_index(idx)), idx);
        }
    }
}
