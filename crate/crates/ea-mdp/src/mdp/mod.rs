//! The decision-process data model and exact planning: Bellman operator,
//! value iteration to the fixed point, policy and action-value evaluation,
//! and greedy-policy extraction.

mod model;
mod planning;

pub use model::{EaMdp, EaMdpBuilder, Policy, QTable, ValueFunction, UNAVAILABLE};
pub use planning::{
    bellman_backup, bellman_operator, greedy_policy, policy_evaluation, policy_evaluation_direct,
    q_evaluation, two_site_closed_form, value_iteration, DEFAULT_MAX_ITERS, DEFAULT_TOL,
};

use crate::quantum::QuantumError;
use thiserror::Error;

/// Tolerance on transition-row and policy-row probability sums.
pub const ROW_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum MdpError {
    #[error("discount factor must lie in [0, 1): got {gamma}")]
    GammaOutOfRange { gamma: f64 },

    #[error("no outcome set was provided")]
    MissingOutcomes,

    #[error("no reward spec was provided")]
    MissingRewards,

    #[error("the outcome set must be in ea-separated mode")]
    OutcomesNotSeparated,

    #[error("state {state}: no evidence state was provided")]
    MissingEaState { state: usize },

    #[error("state {state}: evidence state has dimension {got}, expected {expected}")]
    EaDimensionMismatch {
        state: usize,
        got: usize,
        expected: usize,
    },

    #[error("state index {state} out of range ({n_states} states)")]
    StateOutOfRange { state: usize, n_states: usize },

    #[error("action index {action} out of range ({n_actions} actions)")]
    ActionOutOfRange { action: usize, n_actions: usize },

    #[error("state {state} is not terminal but has no available actions")]
    NoAvailableActions { state: usize },

    #[error(
        "transition row for state {state}, action {action} sums to {sum} (must be 1 within {ROW_SUM_TOL:e})"
    )]
    BadTransitionRow { state: usize, action: usize, sum: f64 },

    #[error("transition row for state {state}, action {action} has a negative or non-finite entry")]
    BadTransitionEntry { state: usize, action: usize },

    #[error("policy row for state {state} sums to {sum} (must be 1 within {ROW_SUM_TOL:e})")]
    BadPolicyRow { state: usize, sum: f64 },

    #[error("policy puts probability {prob} on unavailable action {action} in state {state}")]
    PolicyOnUnavailable { state: usize, action: usize, prob: f64 },

    #[error("policy shape ({p_states} states, {p_actions} actions) does not match the process")]
    PolicyShapeMismatch { p_states: usize, p_actions: usize },

    #[error(
        "no fixed point within tolerance {tol:e} after {iterations} iterations (residual {residual:e})"
    )]
    MaxIterationsExceeded {
        tol: f64,
        iterations: usize,
        residual: f64,
        /// The last iterate, for inspection.
        last: ValueFunction,
    },

    #[error("direct policy evaluation is limited to 64 states, got {n_states}")]
    TooLargeForDirectSolve { n_states: usize },

    #[error("direct policy evaluation failed: the linear system is singular")]
    DirectSolveFailed,

    #[error(transparent)]
    Quantum(#[from] QuantumError),
}
