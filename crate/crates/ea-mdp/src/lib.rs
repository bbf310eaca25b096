//! Decision processes whose rewards come from measuring complex evidence
//! superpositions.
//!
//! Each underlying state carries a normalized complex amplitude vector over
//! evidence basis states. Rewards are expectation values of a Hermitian
//! reward operator under projective measurement, so amplitude phases
//! interfere and shift both values and optimal policies. The crate provides
//! the measurement machinery, an exact tabular planner (Bellman operator,
//! value iteration, policy evaluation), a seeded epsilon-greedy Q-learner,
//! the two bundled benchmark systems (a two-site hopper and a 5x5 lattice),
//! and a CSV sweep runner for parameter studies.
//!
//! # Examples
//!
//! The `examples/` directory is the front door; each file is a runnable tour
//! of one capability:
//!
//! ```bash
//! cargo run --example measurement_basics    # states, outcomes, probabilities
//! cargo run --example reward_operators      # operator route vs probability route
//! cargo run --example two_site_planning     # closed form vs value iteration
//! cargo run --example theta_interference    # phase sweeps on the two-site system
//! cargo run --example lattice_planning      # 5x5 lattice, optimal trajectory
//! cargo run --example ea_q_learning         # Q-learning vs the planning oracle
//! cargo run --example sweep_to_csv          # parameter sweeps written as CSV
//! cargo run --example config_files          # JSON environment configs
//! ```
//!
//! A thin CLI wraps the sweep runner for scripted use:
//!
//! ```bash
//! cargo run --bin eamdp -- two-site --sweep gamma 0 0.9 19
//! cargo run --bin eamdp -- lattice --config crates/ea-mdp/fixtures/lattice_fig3.json \
//!     --sweep phi1 0 6.283185307179586 65
//! cargo run --bin eamdp -- qlearn --config crates/ea-mdp/fixtures/lattice_fig3.json
//! cargo run --bin eamdp -- validate --config crates/ea-mdp/fixtures/two_site_fig1.json
//! ```

pub mod env;
pub mod learning;
pub mod mdp;
pub mod quantum;
pub mod sweep;

pub use quantum::{Complex64, OutcomeMode, OutcomeSet, RewardSpec, StateVector};
