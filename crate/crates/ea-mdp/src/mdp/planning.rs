use nalgebra::{DMatrix, DVector};

use super::{EaMdp, MdpError, Policy, QTable, ValueFunction};

/// Default fixed-point tolerance for the iterative solvers.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default iteration cap; geometric convergence at gamma <= 0.95 reaches
/// [`DEFAULT_TOL`] in well under a thousand sweeps.
pub const DEFAULT_MAX_ITERS: usize = 100_000;

/// One-step lookahead value of taking `action` in `state`:
/// ∑_{s'} p(s'∣s,a)·[r(s') + γ·V(s')].
pub fn bellman_backup(mdp: &EaMdp, v: &ValueFunction, state: usize, action: usize) -> f64 {
    let rewards = mdp.state_reward_table();
    let gamma = mdp.gamma();
    let mut acc = 0.0;
    for (s2, &p) in mdp.transition_row(state, action).iter().enumerate() {
        if p != 0.0 {
            acc += p * (rewards[s2] + gamma * v.get(s2));
        }
    }
    acc
}

/// The optimal Bellman operator T: (TV)(s) = max_a of the one-step backup,
/// with terminal states mapped to zero.
///
/// T is a sup-norm contraction with modulus gamma.
pub fn bellman_operator(v: &ValueFunction, mdp: &EaMdp) -> ValueFunction {
    let values = (0..mdp.n_states())
        .map(|s| {
            if mdp.is_terminal(s) {
                return 0.0;
            }
            mdp.available_actions(s)
                .map(|a| bellman_backup(mdp, v, s, a))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    ValueFunction::from_values(values).expect("finite backups")
}

/// Iterates the Bellman operator from zero until the sup-norm residual
/// ‖TV − V‖∞ drops to `tol`, returning the fixed-point estimate and the
/// number of operator applications.
pub fn value_iteration(
    mdp: &EaMdp,
    tol: f64,
    max_iters: usize,
) -> Result<(ValueFunction, usize), MdpError> {
    assert!(tol > 0.0, "tolerance must be positive");
    value_iteration_from(mdp, ValueFunction::zeros(mdp.n_states()), tol, max_iters)
}

/// Like [`value_iteration`] but starting from an explicit initial guess.
pub fn value_iteration_from(
    mdp: &EaMdp,
    init: ValueFunction,
    tol: f64,
    max_iters: usize,
) -> Result<(ValueFunction, usize), MdpError> {
    let mut v = init;
    let mut residual = f64::INFINITY;
    for iteration in 1..=max_iters {
        let next = bellman_operator(&v, mdp);
        residual = next.sup_distance(&v);
        v = next;
        if residual <= tol {
            return Ok((v, iteration));
        }
    }
    Err(MdpError::MaxIterationsExceeded {
        tol,
        iterations: max_iters,
        residual,
        last: v,
    })
}

/// Fixed point of the on-policy expectation operator, solved iteratively.
///
/// The direct linear-solve route [`policy_evaluation_direct`] computes the
/// same value and serves as an independent cross-check.
pub fn policy_evaluation(
    mdp: &EaMdp,
    policy: &Policy,
    tol: f64,
) -> Result<ValueFunction, MdpError> {
    assert!(tol > 0.0, "tolerance must be positive");
    policy.check_shape(mdp)?;
    let mut v = ValueFunction::zeros(mdp.n_states());
    let mut residual = f64::INFINITY;
    for _ in 1..=DEFAULT_MAX_ITERS {
        let next_values = (0..mdp.n_states())
            .map(|s| {
                if mdp.is_terminal(s) {
                    return 0.0;
                }
                mdp.available_actions(s)
                    .map(|a| policy.prob(s, a) * bellman_backup(mdp, &v, s, a))
                    .sum()
            })
            .collect();
        let next = ValueFunction::from_values(next_values)?;
        residual = next.sup_distance(&v);
        v = next;
        if residual <= tol {
            return Ok(v);
        }
    }
    Err(MdpError::MaxIterationsExceeded {
        tol,
        iterations: DEFAULT_MAX_ITERS,
        residual,
        last: v,
    })
}

/// Policy evaluation by one dense LU solve of (I − γ·P_π)·V = R_π.
///
/// Capped at 64 states; beyond that use the iterative route.
pub fn policy_evaluation_direct(mdp: &EaMdp, policy: &Policy) -> Result<ValueFunction, MdpError> {
    policy.check_shape(mdp)?;
    let n = mdp.n_states();
    if n > 64 {
        return Err(MdpError::TooLargeForDirectSolve { n_states: n });
    }
    let rewards = mdp.state_reward_table();
    let gamma = mdp.gamma();

    let mut a = DMatrix::<f64>::identity(n, n);
    let mut b = DVector::<f64>::zeros(n);
    for s in 0..n {
        if mdp.is_terminal(s) {
            continue; // row stays V(s) = 0
        }
        for action in mdp.available_actions(s) {
            let pi = policy.prob(s, action);
            if pi == 0.0 {
                continue;
            }
            for (s2, &p) in mdp.transition_row(s, action).iter().enumerate() {
                if p == 0.0 {
                    continue;
                }
                a[(s, s2)] -= gamma * pi * p;
                b[s] += pi * p * rewards[s2];
            }
        }
    }

    let solution = a.lu().solve(&b).ok_or(MdpError::DirectSolveFailed)?;
    ValueFunction::from_values(solution.iter().copied().collect())
}

/// Fixed point of the on-policy action-value recursion
/// Q(s,a) = ∑_{s'} p·[r(s') + γ·∑_{a'} π(a'∣s')·Q(s',a')].
pub fn q_evaluation(mdp: &EaMdp, policy: &Policy, tol: f64) -> Result<QTable, MdpError> {
    assert!(tol > 0.0, "tolerance must be positive");
    policy.check_shape(mdp)?;
    let rewards = mdp.state_reward_table();
    let gamma = mdp.gamma();

    let mut q = QTable::zeros(mdp);
    let mut residual = f64::INFINITY;
    for _ in 1..=DEFAULT_MAX_ITERS {
        // On-policy state values under the current table.
        let v: Vec<f64> = (0..mdp.n_states())
            .map(|s| {
                mdp.available_actions(s)
                    .map(|a| policy.prob(s, a) * q.get(s, a))
                    .sum()
            })
            .collect();

        let mut next = QTable::zeros(mdp);
        residual = 0.0;
        for s in 0..mdp.n_states() {
            for a in mdp.available_actions(s) {
                let mut acc = 0.0;
                for (s2, &p) in mdp.transition_row(s, a).iter().enumerate() {
                    if p != 0.0 {
                        acc += p * (rewards[s2] + gamma * v[s2]);
                    }
                }
                residual = residual.max((acc - q.get(s, a)).abs());
                next.set(s, a, acc);
            }
        }
        q = next;
        if residual <= tol {
            return Ok(q);
        }
    }
    Err(MdpError::MaxIterationsExceeded {
        tol,
        iterations: DEFAULT_MAX_ITERS,
        residual,
        last: ValueFunction::zeros(mdp.n_states()),
    })
}

/// The deterministic one-step-lookahead policy for a value function, ties
/// broken toward the lowest action index.
pub fn greedy_policy(v: &ValueFunction, mdp: &EaMdp) -> Policy {
    let actions: Vec<Option<usize>> = (0..mdp.n_states())
        .map(|s| {
            if mdp.is_terminal(s) {
                return None;
            }
            let mut best: Option<(usize, f64)> = None;
            for a in mdp.available_actions(s) {
                let value = bellman_backup(mdp, v, s, a);
                match best {
                    Some((_, bv)) if value <= bv => {}
                    _ => best = Some((a, value)),
                }
            }
            best.map(|(a, _)| a)
        })
        .collect();
    Policy::deterministic(mdp, &actions).expect("greedy actions are available by construction")
}

/// Optimal values of the two-state swap system in closed form:
/// v₁ = (r₂ + γ·r₁)/(1 − γ²) and v₂ = (r₁ + γ·r₂)/(1 − γ²),
/// where rᵢ is the expected reward paid on entering state i.
pub fn two_site_closed_form(r1: f64, r2: f64, gamma: f64) -> Result<(f64, f64), MdpError> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(MdpError::GammaOutOfRange { gamma });
    }
    let denom = 1.0 - gamma * gamma;
    Ok(((r2 + gamma * r1) / denom, (r1 + gamma * r2) / denom))
}
