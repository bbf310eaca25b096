//! Parameter-sweep runner: rebuilds an environment across a grid, solves each
//! point, detects optimal-policy transitions, and emits deterministic CSV.
//!
//! # Output format
//!
//! Files start with `#`-prefixed header lines recording the full resolved
//! parameter set (sweep description plus the base config as one-line JSON),
//! followed by a column-name row and one data row per grid point. Floats are
//! printed with 12 significant digits (`format_sig12`), lines end with `\n`,
//! and identical invocations produce byte-identical files. Wall-clock timings
//! are kept in memory ([`SweepRow::wall_time`]) but never written.
//!
//! The policy fingerprint column is the first 16 hex digits of the SHA-256
//! of the greedy action table: one byte per state in index order, `0xff` for
//! terminal states. Fingerprints are stable across runs and platforms.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::env::{EnvError, EnvironmentConfig};
use crate::learning::{ea_q_learning, EpisodeLog, LearningError, LearningParams};
use crate::mdp::{greedy_policy, value_iteration, EaMdp, MdpError, Policy, QTable};

/// Fixed-point tolerance used by sweep solves; tight enough that reported
/// values carry more correct digits than the CSV prints.
pub const SWEEP_TOL: f64 = 1e-12;
/// Iteration cap for sweep solves.
pub const SWEEP_MAX_ITERS: usize = 200_000;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("sweep grid must not be empty")]
    EmptyGrid,

    #[error("grid for `{parameter}` must be strictly increasing")]
    NotIncreasing { parameter: String },

    #[error("grid for `{parameter}` contains non-finite values")]
    NonFiniteGrid { parameter: String },

    #[error("parameter `{parameter}` does not apply to a `{kind}` environment")]
    InvalidParameter { parameter: String, kind: String },

    #[error("reward index {index} out of range for {len} outcome rewards")]
    RewardIndexOutOfRange { index: usize, len: usize },

    #[error("unknown sweep parameter `{0}`")]
    UnknownParameter(String),

    #[error("cannot rebuild the environment at {parameter} = {value}: {source}")]
    BuildAt {
        parameter: String,
        value: f64,
        source: EnvError,
    },

    #[error("solver failed at {parameter} = {value}: {source}")]
    SolverAt {
        parameter: String,
        value: f64,
        source: MdpError,
    },

    #[error("q-learning experiments need an environment with a terminal state")]
    NeedsTerminal,

    #[error(transparent)]
    Env(#[from] EnvError),

    #[error(transparent)]
    Solver(#[from] MdpError),

    #[error(transparent)]
    Learning(#[from] LearningError),
}

/// Which scalar of the base config a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Gamma,
    /// The outcome reward at this index.
    RewardIndex(usize),
    Phi1,
    Phi2,
    Theta1,
    Theta2,
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gamma => write!(f, "gamma"),
            Self::RewardIndex(k) => write!(f, "reward{k}"),
            Self::Phi1 => write!(f, "phi1"),
            Self::Phi2 => write!(f, "phi2"),
            Self::Theta1 => write!(f, "theta1"),
            Self::Theta2 => write!(f, "theta2"),
        }
    }
}

impl FromStr for SweepParameter {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, SweepError> {
        match s {
            "gamma" => Ok(Self::Gamma),
            "phi1" => Ok(Self::Phi1),
            "phi2" => Ok(Self::Phi2),
            "theta1" => Ok(Self::Theta1),
            "theta2" => Ok(Self::Theta2),
            _ => {
                if let Some(index) = s.strip_prefix("reward") {
                    if let Ok(k) = index.parse::<usize>() {
                        return Ok(Self::RewardIndex(k));
                    }
                }
                Err(SweepError::UnknownParameter(s.into()))
            }
        }
    }
}

/// One sweep dimension: a parameter and its strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn from_values(parameter: SweepParameter, values: Vec<f64>) -> Result<Self, SweepError> {
        if values.is_empty() {
            return Err(SweepError::EmptyGrid);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SweepError::NonFiniteGrid {
                parameter: parameter.to_string(),
            });
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SweepError::NotIncreasing {
                parameter: parameter.to_string(),
            });
        }
        Ok(Self { parameter, values })
    }

    /// `points` evenly spaced values; the first is exactly `from` and, when
    /// `from == 0`, the last is exactly `to` (endpoint checks in periodic
    /// sweeps rely on this).
    pub fn linspace(
        parameter: SweepParameter,
        from: f64,
        to: f64,
        points: usize,
    ) -> Result<Self, SweepError> {
        if points == 0 {
            return Err(SweepError::EmptyGrid);
        }
        let values = if points == 1 {
            vec![from]
        } else {
            (0..points)
                .map(|i| from + (to - from) * (i as f64 / (points - 1) as f64))
                .collect()
        };
        Self::from_values(parameter, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// One or two sweep dimensions. In the two-dimensional case the first axis
/// varies slowest; rows come out in row-major grid order.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepGrid {
    One(Axis),
    Two(Axis, Axis),
}

impl SweepGrid {
    pub fn axes(&self) -> Vec<&Axis> {
        match self {
            Self::One(a) => vec![a],
            Self::Two(a, b) => vec![a, b],
        }
    }

    pub fn points(&self) -> usize {
        match self {
            Self::One(a) => a.len(),
            Self::Two(a, b) => a.len() * b.len(),
        }
    }
}

/// How each grid point is solved.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepSolver {
    /// Exact planning; probe columns report the optimal values.
    ValueIteration,
    /// Tabular learning; probe columns report max_a Q(s, a) of the learned
    /// table and the fingerprint comes from its greedy policy.
    QLearning(LearningParams),
}

/// A declarative sweep: base document, grid, solver.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: EnvironmentConfig,
    pub grid: SweepGrid,
    pub solver: SweepSolver,
}

/// One solved grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// The swept value(s), one per axis.
    pub values: Vec<f64>,
    /// Solved values at the probe states, in probe order.
    pub probe_values: Vec<f64>,
    /// Greedy-policy fingerprint (16 hex digits).
    pub fingerprint: String,
    /// Operator applications (value iteration) or episodes (learning).
    pub iterations: usize,
    /// Wall-clock solve time; informational only, never serialized.
    pub wall_time: Duration,
}

/// The outcome of [`run_sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub parameter_names: Vec<String>,
    pub probe_names: Vec<String>,
    pub rows: Vec<SweepRow>,
    /// Adjacent grid intervals where the greedy policy changed; only
    /// populated for one-dimensional sweeps.
    pub transitions: Vec<(f64, f64)>,
}

/// Substitutes one swept scalar into a copy of the base document.
pub fn apply_parameter(
    base: &EnvironmentConfig,
    parameter: SweepParameter,
    value: f64,
) -> Result<EnvironmentConfig, SweepError> {
    let invalid = || SweepError::InvalidParameter {
        parameter: parameter.to_string(),
        kind: base.kind().into(),
    };
    let mut next = base.clone();
    match (&mut next, parameter) {
        (EnvironmentConfig::TwoSite(c), SweepParameter::Gamma) => c.gamma = value,
        (EnvironmentConfig::TwoSite(c), SweepParameter::Theta1) => c.theta1 = value,
        (EnvironmentConfig::TwoSite(c), SweepParameter::Theta2) => c.theta2 = value,
        (EnvironmentConfig::TwoSite(c), SweepParameter::RewardIndex(k)) => {
            if k >= c.rewards.len() {
                return Err(SweepError::RewardIndexOutOfRange {
                    index: k,
                    len: c.rewards.len(),
                });
            }
            c.rewards[k] = value;
        }
        (EnvironmentConfig::TwoSite(_), _) => return Err(invalid()),
        (EnvironmentConfig::Lattice(c), SweepParameter::Gamma) => c.gamma = value,
        (EnvironmentConfig::Lattice(c), SweepParameter::Phi1) => c.phi1 = value,
        (EnvironmentConfig::Lattice(c), SweepParameter::Phi2) => c.phi2 = value,
        (EnvironmentConfig::Lattice(c), SweepParameter::RewardIndex(k)) => {
            if k >= c.rewards.len() {
                return Err(SweepError::RewardIndexOutOfRange {
                    index: k,
                    len: c.rewards.len(),
                });
            }
            c.rewards[k] = value;
        }
        (EnvironmentConfig::Lattice(_), _) => return Err(invalid()),
    }
    Ok(next)
}

/// Probe states and their column names for a config.
fn probes(config: &EnvironmentConfig) -> Result<(Vec<usize>, Vec<String>), SweepError> {
    match config {
        EnvironmentConfig::TwoSite(_) => {
            Ok((vec![0, 1], vec!["v_s1".into(), "v_s2".into()]))
        }
        EnvironmentConfig::Lattice(c) => {
            let spec = c.to_spec()?;
            let mut indices = vec![spec.start_index()];
            let mut names = vec!["v_start".into()];
            for &(x, y) in &c.probes {
                indices.push(spec.site_index((x, y)));
                names.push(format!("v_x{x}y{y}"));
            }
            Ok((indices, names))
        }
    }
}

fn start_state(config: &EnvironmentConfig) -> Result<usize, SweepError> {
    match config {
        EnvironmentConfig::TwoSite(_) => Ok(0),
        EnvironmentConfig::Lattice(c) => Ok(c.to_spec()?.start_index()),
    }
}

/// Order-sensitive hash of a deterministic action table: one byte per state
/// (the greedy action index, `0xff` for terminal states), SHA-256, first 16
/// hex digits.
pub fn policy_fingerprint(policy: &Policy) -> String {
    let bytes: Vec<u8> = (0..policy.n_states())
        .map(|s| policy.action(s).map_or(0xff, |a| a as u8))
        .collect();
    let digest = Sha256::digest(&bytes);
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn greedy_from_q(mdp: &EaMdp, q: &QTable) -> Policy {
    let actions: Vec<Option<usize>> = (0..mdp.n_states()).map(|s| q.argmax_available(s)).collect();
    Policy::deterministic(mdp, &actions).expect("argmax actions are available")
}

fn solve_point(
    config: &EnvironmentConfig,
    solver: &SweepSolver,
    probe_indices: &[usize],
    parameter: &str,
    value: f64,
) -> Result<SweepRow, SweepError> {
    let started = Instant::now();
    let mdp = config.build().map_err(|source| SweepError::BuildAt {
        parameter: parameter.into(),
        value,
        source,
    })?;
    let (probe_values, fingerprint, iterations) = match solver {
        SweepSolver::ValueIteration => {
            let (v, iterations) = value_iteration(&mdp, SWEEP_TOL, SWEEP_MAX_ITERS).map_err(
                |source| SweepError::SolverAt {
                    parameter: parameter.into(),
                    value,
                    source,
                },
            )?;
            let greedy = greedy_policy(&v, &mdp);
            let probe_values = probe_indices.iter().map(|&s| v[s]).collect();
            (probe_values, policy_fingerprint(&greedy), iterations)
        }
        SweepSolver::QLearning(params) => {
            let start = start_state(config)?;
            let (q, _) = ea_q_learning(&mdp, start, params)?;
            let greedy = greedy_from_q(&mdp, &q);
            let probe_values = probe_indices
                .iter()
                .map(|&s| q.max_available(s).unwrap_or(0.0))
                .collect();
            (probe_values, policy_fingerprint(&greedy), params.episodes)
        }
    };
    Ok(SweepRow {
        values: vec![value],
        probe_values,
        fingerprint,
        iterations,
        wall_time: started.elapsed(),
    })
}

/// Runs a sweep: for each grid point, substitute, rebuild, solve, record.
///
/// Rows come out in grid order; a failure at any point aborts the sweep with
/// the offending parameter value in the error.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    let (probe_indices, probe_names) = probes(&spec.base)?;
    match &spec.grid {
        SweepGrid::One(axis) => {
            let name = axis.parameter.to_string();
            let mut rows = Vec::with_capacity(axis.len());
            for &value in &axis.values {
                let config = apply_parameter(&spec.base, axis.parameter, value)?;
                rows.push(solve_point(
                    &config,
                    &spec.solver,
                    &probe_indices,
                    &name,
                    value,
                )?);
            }
            let transitions = detect_policy_transitions(&rows);
            Ok(SweepResult {
                parameter_names: vec![name],
                probe_names,
                rows,
                transitions,
            })
        }
        SweepGrid::Two(outer, inner) => {
            let names = vec![outer.parameter.to_string(), inner.parameter.to_string()];
            let mut rows = Vec::with_capacity(outer.len() * inner.len());
            for &a in &outer.values {
                let partial = apply_parameter(&spec.base, outer.parameter, a)?;
                // Attribute failures to the full grid point, not just the
                // inner coordinate.
                let point = format!("{}={} {}", names[0], format_sig12(a), names[1]);
                for &b in &inner.values {
                    let config = apply_parameter(&partial, inner.parameter, b)?;
                    let mut row =
                        solve_point(&config, &spec.solver, &probe_indices, &point, b)?;
                    row.values = vec![a, b];
                    rows.push(row);
                }
            }
            Ok(SweepResult {
                parameter_names: names,
                probe_names,
                rows,
                transitions: Vec::new(),
            })
        }
    }
}

/// Grid intervals (xᵢ, xᵢ₊₁) whose endpoints carry different greedy-policy
/// fingerprints; expects rows from a one-dimensional sweep, in grid order.
pub fn detect_policy_transitions(rows: &[SweepRow]) -> Vec<(f64, f64)> {
    rows.windows(2)
        .filter(|w| w[0].fingerprint != w[1].fingerprint)
        .map(|w| (w[0].values[0], w[1].values[0]))
        .collect()
}

/// Formats a float with 12 significant digits, `.` decimal separator, and a
/// plain exponent; negative zero is canonicalized to zero.
pub fn format_sig12(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn solver_header(solver: &SweepSolver) -> String {
    match solver {
        SweepSolver::ValueIteration => {
            format!("solver=value_iteration tol={SWEEP_TOL:e} max_iters={SWEEP_MAX_ITERS}")
        }
        SweepSolver::QLearning(p) => format!(
            "solver=q_learning alpha={} epsilon={} episodes={} max_steps={} seed={} alpha_mode={:?}",
            format_sig12(p.alpha),
            format_sig12(p.epsilon),
            p.episodes,
            p.max_steps_per_episode,
            p.seed,
            p.alpha_mode,
        ),
    }
}

fn config_header_line(config: &EnvironmentConfig) -> String {
    format!(
        "# config {}",
        serde_json::to_string(config).expect("config serialization cannot fail")
    )
}

/// Writes a sweep result as deterministic CSV (see the module docs).
pub fn write_sweep_csv<W: Write + ?Sized>(
    out: &mut W,
    spec: &SweepSpec,
    result: &SweepResult,
) -> io::Result<()> {
    let grid_desc: Vec<String> = spec
        .grid
        .axes()
        .iter()
        .map(|axis| {
            format!(
                "{}[{}..{}/{}]",
                axis.parameter,
                format_sig12(axis.values[0]),
                format_sig12(*axis.values.last().expect("non-empty")),
                axis.len()
            )
        })
        .collect();
    writeln!(
        out,
        "# ea-mdp sweep kind={} grid={} {}",
        spec.base.kind(),
        grid_desc.join("x"),
        solver_header(&spec.solver)
    )?;
    writeln!(out, "{}", config_header_line(&spec.base))?;

    let mut columns = result.parameter_names.clone();
    columns.extend(result.probe_names.iter().cloned());
    columns.push("fingerprint".into());
    columns.push("iterations".into());
    writeln!(out, "{}", columns.join(","))?;

    for row in &result.rows {
        let mut fields: Vec<String> = row.values.iter().copied().map(format_sig12).collect();
        fields.extend(row.probe_values.iter().copied().map(format_sig12));
        fields.push(row.fingerprint.clone());
        fields.push(row.iterations.to_string());
        writeln!(out, "{}", fields.join(","))?;
    }

    if result.parameter_names.len() == 1 {
        if result.transitions.is_empty() {
            writeln!(out, "# transitions none")?;
        } else {
            for (a, b) in &result.transitions {
                writeln!(
                    out,
                    "# transition {} in [{},{}]",
                    result.parameter_names[0],
                    format_sig12(*a),
                    format_sig12(*b)
                )?;
            }
        }
    }
    Ok(())
}

/// The outcome of a learning experiment plus its planning-oracle comparison.
#[derive(Debug, Clone)]
pub struct QLearningExperiment {
    pub logs: Vec<EpisodeLog>,
    pub q: QTable,
    pub learned_policy: Policy,
    pub oracle_policy: Policy,
    /// States visited by following the oracle policy from the start state;
    /// ends with the terminal state when one is reached.
    pub optimal_trajectory: Vec<usize>,
    /// Fraction of non-terminal trajectory states where the learned greedy
    /// action matches the oracle's.
    pub agreement_ratio: f64,
}

/// Trains on the configured environment and compares the learned greedy
/// policy against the value-iteration oracle along the optimal trajectory.
///
/// The environment must have a terminal state; open-ended systems are
/// rejected up front (episodes could only ever end at the step cap).
pub fn run_q_learning_experiment(
    config: &EnvironmentConfig,
    params: &LearningParams,
) -> Result<QLearningExperiment, SweepError> {
    let mdp = config.build()?;
    if mdp.terminals().is_empty() {
        return Err(SweepError::NeedsTerminal);
    }
    let start = start_state(config)?;
    let (q, logs) = ea_q_learning(&mdp, start, params)?;
    let learned_policy = greedy_from_q(&mdp, &q);

    let (v_star, _) = value_iteration(&mdp, SWEEP_TOL, SWEEP_MAX_ITERS)?;
    let oracle_policy = greedy_policy(&v_star, &mdp);

    let mut optimal_trajectory = vec![start];
    let mut state = start;
    for _ in 0..mdp.n_states() {
        let Some(action) = oracle_policy.action(state) else {
            break; // terminal
        };
        let row = mdp.transition_row(state, action);
        let next = row
            .iter()
            .position(|&p| p == 1.0)
            .expect("oracle trajectories follow deterministic transitions");
        optimal_trajectory.push(next);
        state = next;
        if mdp.is_terminal(state) {
            break;
        }
    }

    let decisions: Vec<usize> = optimal_trajectory
        .iter()
        .copied()
        .filter(|&s| !mdp.is_terminal(s))
        .collect();
    let matches = decisions
        .iter()
        .filter(|&&s| learned_policy.action(s) == oracle_policy.action(s))
        .count();
    let agreement_ratio = if decisions.is_empty() {
        1.0
    } else {
        matches as f64 / decisions.len() as f64
    };

    Ok(QLearningExperiment {
        logs,
        q,
        learned_policy,
        oracle_policy,
        optimal_trajectory,
        agreement_ratio,
    })
}

fn policy_letters(policy: &Policy) -> String {
    (0..policy.n_states())
        .map(|s| match policy.action(s) {
            None => 'T',
            Some(a) if policy.n_actions() == 4 => {
                crate::env::LatticeAction::from_index(a).map_or('?', |m| m.letter())
            }
            Some(a) => char::from_digit(a as u32, 10).unwrap_or('?'),
        })
        .collect()
}

/// Writes per-episode logs plus the learned policy and the oracle-comparison
/// footer as deterministic CSV.
pub fn write_qlearn_csv<W: Write + ?Sized>(
    out: &mut W,
    config: &EnvironmentConfig,
    params: &LearningParams,
    experiment: &QLearningExperiment,
) -> io::Result<()> {
    writeln!(
        out,
        "# ea-mdp qlearn kind={} {}",
        config.kind(),
        solver_header(&SweepSolver::QLearning(params.clone()))
    )?;
    writeln!(out, "{}", config_header_line(config))?;
    writeln!(out, "episode,steps,undiscounted_return,discounted_return")?;
    for log in &experiment.logs {
        writeln!(
            out,
            "{},{},{},{}",
            log.episode_index,
            log.steps,
            format_sig12(log.undiscounted_return),
            format_sig12(log.discounted_return)
        )?;
    }
    writeln!(
        out,
        "# learned_policy {}",
        policy_letters(&experiment.learned_policy)
    )?;
    writeln!(
        out,
        "# oracle_policy {}",
        policy_letters(&experiment.oracle_policy)
    )?;
    let trajectory: Vec<String> = experiment
        .optimal_trajectory
        .iter()
        .map(usize::to_string)
        .collect();
    writeln!(out, "# optimal_trajectory {}", trajectory.join(","))?;
    writeln!(
        out,
        "# oracle_agreement_ratio {}",
        format_sig12(experiment.agreement_ratio)
    )?;
    Ok(())
}
