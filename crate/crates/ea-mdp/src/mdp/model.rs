use std::collections::BTreeSet;
use std::ops::Index;

use rand::Rng;

use crate::quantum::{
    separated_expected_reward, OutcomeMode, OutcomeSet, RewardSpec, StateVector,
};

use super::{MdpError, ROW_SUM_TOL};

/// Sentinel stored in [`QTable`] cells whose action is unavailable; it is
/// excluded from every max and argmax.
pub const UNAVAILABLE: f64 = f64::NEG_INFINITY;

/// A finite decision process whose per-state rewards are expectation values
/// of measuring each state's evidence superposition.
///
/// Immutable after construction; build one with [`EaMdpBuilder`]. Terminal
/// states absorb with value zero: they expose no actions, and entering one
/// pays the reward of its evidence state and ends the episode.
#[derive(Debug, Clone)]
pub struct EaMdp {
    n_states: usize,
    n_actions: usize,
    gamma: f64,
    available: Vec<bool>,
    transition: Vec<f64>,
    ea_states: Vec<StateVector>,
    outcomes: OutcomeSet,
    rewards: RewardSpec,
    terminals: BTreeSet<usize>,
    state_rewards: Vec<f64>,
}

impl EaMdp {
    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn is_terminal(&self, state: usize) -> bool {
        self.terminals.contains(&state)
    }

    pub fn terminals(&self) -> &BTreeSet<usize> {
        &self.terminals
    }

    pub fn is_available(&self, state: usize, action: usize) -> bool {
        self.available[state * self.n_actions + action]
    }

    /// Indices of the actions available in `state`, in ascending order.
    pub fn available_actions(&self, state: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_actions).filter(move |&a| self.is_available(state, a))
    }

    /// The transition distribution over next states for an available action.
    pub fn transition_row(&self, state: usize, action: usize) -> &[f64] {
        let base = (state * self.n_actions + action) * self.n_states;
        &self.transition[base..base + self.n_states]
    }

    /// Samples the successor of a deterministic or stochastic transition.
    pub fn sample_successor<R: Rng + ?Sized>(
        &self,
        state: usize,
        action: usize,
        rng: &mut R,
    ) -> usize {
        let row = self.transition_row(state, action);
        // Deterministic rows (the common case) avoid an RNG draw entirely so
        // learning consumes a documented number of draws per step.
        if let Some(s2) = row.iter().position(|&p| p == 1.0) {
            return s2;
        }
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (s2, &p) in row.iter().enumerate() {
            acc += p;
            if u < acc {
                return s2;
            }
        }
        row.len() - 1
    }

    pub fn ea_state(&self, state: usize) -> &StateVector {
        &self.ea_states[state]
    }

    pub fn outcomes(&self) -> &OutcomeSet {
        &self.outcomes
    }

    pub fn rewards(&self) -> &RewardSpec {
        &self.rewards
    }

    /// The cached per-state expected rewards: entry `s` is the measurement
    /// expectation for the evidence state of `s`, paid on entering `s`.
    pub fn state_reward_table(&self) -> &[f64] {
        &self.state_rewards
    }
}

/// Step-by-step constructor for [`EaMdp`].
#[derive(Debug, Clone)]
pub struct EaMdpBuilder {
    n_states: usize,
    n_actions: usize,
    gamma: f64,
    available: Vec<bool>,
    transition: Vec<f64>,
    ea_states: Vec<Option<StateVector>>,
    outcomes: Option<OutcomeSet>,
    rewards: Option<RewardSpec>,
    terminals: BTreeSet<usize>,
}

impl EaMdpBuilder {
    pub fn new(n_states: usize, n_actions: usize) -> Self {
        assert!(n_states > 0 && n_actions > 0);
        Self {
            n_states,
            n_actions,
            gamma: 0.9,
            available: vec![false; n_states * n_actions],
            transition: vec![0.0; n_states * n_actions * n_states],
            ea_states: vec![None; n_states],
            outcomes: None,
            rewards: None,
            terminals: BTreeSet::new(),
        }
    }

    pub fn gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    /// Marks `(state, action)` available with a probability-1 jump to `next`.
    pub fn deterministic_transition(mut self, state: usize, action: usize, next: usize) -> Self {
        let base = (state * self.n_actions + action) * self.n_states;
        self.transition[base..base + self.n_states].fill(0.0);
        self.transition[base + next] = 1.0;
        self.available[state * self.n_actions + action] = true;
        self
    }

    /// Marks `(state, action)` available with an explicit distribution over
    /// next states.
    pub fn stochastic_transition(mut self, state: usize, action: usize, row: &[f64]) -> Self {
        assert_eq!(row.len(), self.n_states);
        let base = (state * self.n_actions + action) * self.n_states;
        self.transition[base..base + self.n_states].copy_from_slice(row);
        self.available[state * self.n_actions + action] = true;
        self
    }

    pub fn ea_state(mut self, state: usize, psi: StateVector) -> Self {
        self.ea_states[state] = Some(psi);
        self
    }

    pub fn outcomes(mut self, outcomes: OutcomeSet) -> Self {
        self.outcomes = Some(outcomes);
        self
    }

    pub fn rewards(mut self, rewards: RewardSpec) -> Self {
        self.rewards = Some(rewards);
        self
    }

    pub fn terminal(mut self, state: usize) -> Self {
        self.terminals.insert(state);
        self
    }

    /// Validates the assembled process and precomputes the reward table.
    pub fn build(mut self) -> Result<EaMdp, MdpError> {
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(MdpError::GammaOutOfRange { gamma: self.gamma });
        }
        let outcomes = self.outcomes.ok_or(MdpError::MissingOutcomes)?;
        if outcomes.mode() != OutcomeMode::EaSeparated {
            return Err(MdpError::OutcomesNotSeparated);
        }
        let rewards = self.rewards.ok_or(MdpError::MissingRewards)?;
        rewards.check_alignment(&outcomes)?;

        for &t in &self.terminals {
            if t >= self.n_states {
                return Err(MdpError::StateOutOfRange {
                    state: t,
                    n_states: self.n_states,
                });
            }
            // Terminal states absorb: drop any actions declared on them.
            for a in 0..self.n_actions {
                self.available[t * self.n_actions + a] = false;
            }
        }

        let mut ea_states = Vec::with_capacity(self.n_states);
        for (s, psi) in self.ea_states.into_iter().enumerate() {
            let psi = psi.ok_or(MdpError::MissingEaState { state: s })?;
            if psi.dim() != outcomes.space_dim() {
                return Err(MdpError::EaDimensionMismatch {
                    state: s,
                    got: psi.dim(),
                    expected: outcomes.space_dim(),
                });
            }
            ea_states.push(psi);
        }

        for s in 0..self.n_states {
            let mut any = false;
            for a in 0..self.n_actions {
                if !self.available[s * self.n_actions + a] {
                    continue;
                }
                any = true;
                let base = (s * self.n_actions + a) * self.n_states;
                let row = &self.transition[base..base + self.n_states];
                if row.iter().any(|&p| !p.is_finite() || p < 0.0) {
                    return Err(MdpError::BadTransitionEntry { state: s, action: a });
                }
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > ROW_SUM_TOL {
                    return Err(MdpError::BadTransitionRow {
                        state: s,
                        action: a,
                        sum,
                    });
                }
            }
            if !any && !self.terminals.contains(&s) {
                return Err(MdpError::NoAvailableActions { state: s });
            }
        }

        let state_rewards = ea_states
            .iter()
            .map(|psi| separated_expected_reward(psi, &outcomes, &rewards))
            .collect::<Result<Vec<_>, _>>()?;

        Ok(EaMdp {
            n_states: self.n_states,
            n_actions: self.n_actions,
            gamma: self.gamma,
            available: self.available,
            transition: self.transition,
            ea_states,
            outcomes,
            rewards,
            terminals: self.terminals,
            state_rewards,
        })
    }
}

/// A real-valued table over states.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueFunction {
    values: Vec<f64>,
}

impl ValueFunction {
    pub fn zeros(n_states: usize) -> Self {
        Self {
            values: vec![0.0; n_states],
        }
    }

    pub fn constant(n_states: usize, value: f64) -> Self {
        Self {
            values: vec![value; n_states],
        }
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self, MdpError> {
        if let Some(state) = values.iter().position(|v| !v.is_finite()) {
            return Err(MdpError::StateOutOfRange {
                state,
                n_states: values.len(),
            });
        }
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, state: usize) -> f64 {
        self.values[state]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sup-norm distance max_s |self(s) − other(s)|.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for ValueFunction {
    type Output = f64;

    fn index(&self, state: usize) -> &f64 {
        &self.values[state]
    }
}

/// A real-valued table over state-action pairs.
///
/// Cells for unavailable actions hold [`UNAVAILABLE`] and never participate
/// in maxima or argmaxima.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    n_states: usize,
    n_actions: usize,
    values: Vec<f64>,
}

impl QTable {
    /// An all-zero table matching the availability mask of `mdp`.
    pub fn zeros(mdp: &EaMdp) -> Self {
        let mut values = vec![UNAVAILABLE; mdp.n_states() * mdp.n_actions()];
        for s in 0..mdp.n_states() {
            for a in mdp.available_actions(s) {
                values[s * mdp.n_actions() + a] = 0.0;
            }
        }
        Self {
            n_states: mdp.n_states(),
            n_actions: mdp.n_actions(),
            values,
        }
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    pub fn get(&self, state: usize, action: usize) -> f64 {
        self.values[state * self.n_actions + action]
    }

    pub fn is_available(&self, state: usize, action: usize) -> bool {
        self.values[state * self.n_actions + action] != UNAVAILABLE
    }

    pub fn set(&mut self, state: usize, action: usize, value: f64) {
        let idx = state * self.n_actions + action;
        debug_assert!(
            self.values[idx] != UNAVAILABLE,
            "writing to unavailable cell ({state}, {action})"
        );
        self.values[idx] = value;
    }

    pub fn row(&self, state: usize) -> &[f64] {
        &self.values[state * self.n_actions..(state + 1) * self.n_actions]
    }

    /// Greatest value over available actions; `None` when the state exposes
    /// none (terminal states).
    pub fn max_available(&self, state: usize) -> Option<f64> {
        let best = self
            .row(state)
            .iter()
            .copied()
            .filter(|&v| v != UNAVAILABLE)
            .fold(f64::NEG_INFINITY, f64::max);
        (best != f64::NEG_INFINITY).then_some(best)
    }

    /// Index of the greatest available value, ties broken toward the lowest
    /// action index.
    pub fn argmax_available(&self, state: usize) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (a, &v) in self.row(state).iter().enumerate() {
            if v == UNAVAILABLE {
                continue;
            }
            match best {
                Some((_, bv)) if v <= bv => {}
                _ => best = Some((a, v)),
            }
        }
        best.map(|(a, _)| a)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// A per-state probability distribution over available actions.
///
/// Terminal states carry an all-zero row.
#[derive(Debug, Clone, PartialEq)]
pub struct Policy {
    n_states: usize,
    n_actions: usize,
    probs: Vec<f64>,
}

impl Policy {
    /// A deterministic policy; `actions[s]` must be `None` exactly for
    /// terminal states.
    pub fn deterministic(mdp: &EaMdp, actions: &[Option<usize>]) -> Result<Self, MdpError> {
        let mut probs = vec![0.0; mdp.n_states() * mdp.n_actions()];
        for (s, &choice) in actions.iter().enumerate() {
            match choice {
                Some(a) => {
                    if a >= mdp.n_actions() {
                        return Err(MdpError::ActionOutOfRange {
                            action: a,
                            n_actions: mdp.n_actions(),
                        });
                    }
                    if !mdp.is_available(s, a) {
                        return Err(MdpError::PolicyOnUnavailable {
                            state: s,
                            action: a,
                            prob: 1.0,
                        });
                    }
                    probs[s * mdp.n_actions() + a] = 1.0;
                }
                None => {
                    if !mdp.is_terminal(s) {
                        return Err(MdpError::NoAvailableActions { state: s });
                    }
                }
            }
        }
        Ok(Self {
            n_states: mdp.n_states(),
            n_actions: mdp.n_actions(),
            probs,
        })
    }

    /// The uniform policy over available actions.
    pub fn uniform(mdp: &EaMdp) -> Self {
        let mut probs = vec![0.0; mdp.n_states() * mdp.n_actions()];
        for s in 0..mdp.n_states() {
            let actions: Vec<usize> = mdp.available_actions(s).collect();
            if actions.is_empty() {
                continue;
            }
            let p = 1.0 / actions.len() as f64;
            for a in actions {
                probs[s * mdp.n_actions() + a] = p;
            }
        }
        Self {
            n_states: mdp.n_states(),
            n_actions: mdp.n_actions(),
            probs,
        }
    }

    /// A random stochastic policy over available actions.
    pub fn random<R: Rng + ?Sized>(mdp: &EaMdp, rng: &mut R) -> Self {
        let mut probs = vec![0.0; mdp.n_states() * mdp.n_actions()];
        for s in 0..mdp.n_states() {
            let actions: Vec<usize> = mdp.available_actions(s).collect();
            if actions.is_empty() {
                continue;
            }
            let weights: Vec<f64> = actions.iter().map(|_| rng.random::<f64>() + 1e-3).collect();
            let total: f64 = weights.iter().sum();
            for (a, w) in actions.iter().zip(weights) {
                probs[s * mdp.n_actions() + a] = w / total;
            }
        }
        Self {
            n_states: mdp.n_states(),
            n_actions: mdp.n_actions(),
            probs,
        }
    }

    /// Builds a policy from explicit rows, validating sums and availability.
    pub fn from_rows(mdp: &EaMdp, rows: &[Vec<f64>]) -> Result<Self, MdpError> {
        let mut probs = vec![0.0; mdp.n_states() * mdp.n_actions()];
        for (s, row) in rows.iter().enumerate() {
            if row.len() != mdp.n_actions() {
                return Err(MdpError::PolicyShapeMismatch {
                    p_states: rows.len(),
                    p_actions: row.len(),
                });
            }
            for (a, &p) in row.iter().enumerate() {
                if p > 0.0 && !mdp.is_available(s, a) {
                    return Err(MdpError::PolicyOnUnavailable {
                        state: s,
                        action: a,
                        prob: p,
                    });
                }
                probs[s * mdp.n_actions() + a] = p;
            }
            let sum: f64 = row.iter().sum();
            let expected = if mdp.is_terminal(s) { 0.0 } else { 1.0 };
            if (sum - expected).abs() > ROW_SUM_TOL {
                return Err(MdpError::BadPolicyRow { state: s, sum });
            }
        }
        Ok(Self {
            n_states: mdp.n_states(),
            n_actions: mdp.n_actions(),
            probs,
        })
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    pub fn prob(&self, state: usize, action: usize) -> f64 {
        self.probs[state * self.n_actions + action]
    }

    /// The modal action of the row (ties toward the lowest index), or `None`
    /// for an all-zero terminal row.
    pub fn action(&self, state: usize) -> Option<usize> {
        let row = &self.probs[state * self.n_actions..(state + 1) * self.n_actions];
        let mut best: Option<(usize, f64)> = None;
        for (a, &p) in row.iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            match best {
                Some((_, bp)) if p <= bp => {}
                _ => best = Some((a, p)),
            }
        }
        best.map(|(a, _)| a)
    }

    pub(crate) fn check_shape(&self, mdp: &EaMdp) -> Result<(), MdpError> {
        if self.n_states != mdp.n_states() || self.n_actions != mdp.n_actions() {
            return Err(MdpError::PolicyShapeMismatch {
                p_states: self.n_states,
                p_actions: self.n_actions,
            });
        }
        Ok(())
    }
}
