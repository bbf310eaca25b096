//! Tabular epsilon-greedy Q-learning with seeded, reproducible stochasticity.
//!
//! # Draw order
//!
//! Randomness comes from a ChaCha8 stream seeded by [`LearningParams::seed`].
//! Every step consumes exactly one `f64` draw (the explore/exploit Bernoulli)
//! plus one more `f64` draw when exploring, which selects uniformly among the
//! *available* actions via `floor(u * k)`. Transitions in the bundled systems
//! are deterministic and consume no draws. Identical parameters and seed
//! therefore reproduce runs bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::mdp::{EaMdp, QTable};

#[derive(Debug, Error, PartialEq)]
pub enum LearningError {
    #[error("learning rate must lie in (0, 1]: got {alpha}")]
    AlphaOutOfRange { alpha: f64 },

    #[error("exploration rate must lie in [0, 1]: got {epsilon}")]
    EpsilonOutOfRange { epsilon: f64 },

    #[error("max_steps_per_episode must be at least 1")]
    ZeroStepCap,

    #[error("state {state} has no available actions")]
    NoAvailableActions { state: usize },

    #[error("cannot start an episode in terminal state {state}")]
    TerminalStart { state: usize },

    #[error("start state {state} out of range ({n_states} states)")]
    StartOutOfRange { state: usize, n_states: usize },

    #[error("update targets unavailable pair (state {state}, action {action})")]
    UnavailablePair { state: usize, action: usize },
}

/// How the per-update learning rate is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaMode {
    /// Use [`LearningParams::alpha`] for every update.
    #[default]
    Fixed,
    /// Use 1/(1 + visits(s, a)), counting prior updates of the pair. This is
    /// the classic decaying schedule that averages targets exactly.
    VisitCountDecay,
}

/// Hyperparameters of a training run.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningParams {
    pub alpha: f64,
    pub epsilon: f64,
    pub episodes: usize,
    pub max_steps_per_episode: usize,
    pub seed: u64,
    pub alpha_mode: AlphaMode,
}

impl Default for LearningParams {
    fn default() -> Self {
        Self {
            alpha: 0.1,
            epsilon: 0.1,
            episodes: 20_000,
            max_steps_per_episode: 500,
            seed: 42,
            alpha_mode: AlphaMode::Fixed,
        }
    }
}

impl LearningParams {
    pub fn validate(&self) -> Result<(), LearningError> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(LearningError::AlphaOutOfRange { alpha: self.alpha });
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(LearningError::EpsilonOutOfRange {
                epsilon: self.epsilon,
            });
        }
        if self.max_steps_per_episode == 0 {
            return Err(LearningError::ZeroStepCap);
        }
        Ok(())
    }
}

/// Per-episode bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeLog {
    pub episode_index: usize,
    pub steps: usize,
    pub undiscounted_return: f64,
    pub discounted_return: f64,
}

/// Epsilon-greedy action choice over the available entries of a Q row.
///
/// With probability `epsilon` the choice is uniform over available actions,
/// otherwise the greedy action with ties broken toward the lowest index.
/// Consumes one RNG draw, or two when exploring (see the module docs).
pub fn epsilon_greedy_action<R: Rng + ?Sized>(
    q: &QTable,
    state: usize,
    epsilon: f64,
    rng: &mut R,
) -> Result<usize, LearningError> {
    let explore = rng.random::<f64>() < epsilon;
    if explore {
        let available: Vec<usize> = (0..q.n_actions())
            .filter(|&a| q.is_available(state, a))
            .collect();
        if available.is_empty() {
            return Err(LearningError::NoAvailableActions { state });
        }
        let u: f64 = rng.random();
        let k = ((u * available.len() as f64) as usize).min(available.len() - 1);
        Ok(available[k])
    } else {
        q.argmax_available(state)
            .ok_or(LearningError::NoAvailableActions { state })
    }
}

/// One temporal-difference update:
/// Q(s,a) += α·[r + γ·max_{a'} Q(s',a') − Q(s,a)].
///
/// Only the (s, a) entry changes. A terminal next state has no available
/// actions and contributes a zero max-term.
pub fn q_update(
    q: &mut QTable,
    state: usize,
    action: usize,
    reward: f64,
    next_state: usize,
    alpha: f64,
    gamma: f64,
) -> Result<(), LearningError> {
    if !q.is_available(state, action) {
        return Err(LearningError::UnavailablePair { state, action });
    }
    let max_next = q.max_available(next_state).unwrap_or(0.0);
    let current = q.get(state, action);
    q.set(
        state,
        action,
        current + alpha * (reward + gamma * max_next - current),
    );
    Ok(())
}

/// An in-progress training run; step it one episode at a time.
///
/// A single run is strictly sequential because the RNG stream is part of the
/// reproducibility contract. Independent runs with different seeds share no
/// state and may proceed concurrently.
pub struct QLearner<'a> {
    mdp: &'a EaMdp,
    params: LearningParams,
    start_state: usize,
    q: QTable,
    visits: Vec<u32>,
    rng: ChaCha8Rng,
    episodes_run: usize,
}

impl<'a> QLearner<'a> {
    pub fn new(
        mdp: &'a EaMdp,
        start_state: usize,
        params: LearningParams,
    ) -> Result<Self, LearningError> {
        params.validate()?;
        if start_state >= mdp.n_states() {
            return Err(LearningError::StartOutOfRange {
                state: start_state,
                n_states: mdp.n_states(),
            });
        }
        if mdp.is_terminal(start_state) {
            return Err(LearningError::TerminalStart { state: start_state });
        }
        Ok(Self {
            mdp,
            start_state,
            q: QTable::zeros(mdp),
            visits: vec![0; mdp.n_states() * mdp.n_actions()],
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            params,
            episodes_run: 0,
        })
    }

    pub fn q(&self) -> &QTable {
        &self.q
    }

    /// Runs one episode from the start state and returns its log entry.
    pub fn run_episode(&mut self) -> Result<EpisodeLog, LearningError> {
        let rewards = self.mdp.state_reward_table();
        let gamma = self.mdp.gamma();
        let mut state = self.start_state;
        let mut steps = 0;
        let mut undiscounted = 0.0;
        let mut discounted = 0.0;
        let mut discount = 1.0;

        while steps < self.params.max_steps_per_episode {
            let action = epsilon_greedy_action(&self.q, state, self.params.epsilon, &mut self.rng)?;
            let next = self
                .mdp
                .sample_successor(state, action, &mut self.rng);
            let reward = rewards[next];

            let idx = state * self.mdp.n_actions() + action;
            let alpha = match self.params.alpha_mode {
                AlphaMode::Fixed => self.params.alpha,
                AlphaMode::VisitCountDecay => 1.0 / (1.0 + f64::from(self.visits[idx])),
            };
            q_update(&mut self.q, state, action, reward, next, alpha, gamma)?;
            self.visits[idx] += 1;

            undiscounted += reward;
            discounted += discount * reward;
            discount *= gamma;
            steps += 1;
            state = next;
            if self.mdp.is_terminal(state) {
                break;
            }
        }

        let log = EpisodeLog {
            episode_index: self.episodes_run,
            steps,
            undiscounted_return: undiscounted,
            discounted_return: discounted,
        };
        self.episodes_run += 1;
        Ok(log)
    }

    pub fn into_q(self) -> QTable {
        self.q
    }
}

/// Runs the full epsilon-greedy training loop: `episodes` episodes from
/// `start_state`, each ended by reaching a terminal state or by the step cap.
///
/// The Q table starts at zero and the run is fully deterministic given the
/// seed.
pub fn ea_q_learning(
    mdp: &EaMdp,
    start_state: usize,
    params: &LearningParams,
) -> Result<(QTable, Vec<EpisodeLog>), LearningError> {
    let mut learner = QLearner::new(mdp, start_state, params.clone())?;
    let mut logs = Vec::with_capacity(params.episodes);
    for _ in 0..params.episodes {
        logs.push(learner.run_episode()?);
    }
    Ok((learner.into_q(), logs))
}
