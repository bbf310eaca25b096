//! Epsilon-greedy Q-learning on the lattice, compared against the exact
//! planning oracle.

use ea_mdp::env::{EnvironmentConfig, LatticeConfig};
use ea_mdp::learning::LearningParams;
use ea_mdp::sweep::run_q_learning_experiment;

fn main() {
    let config = EnvironmentConfig::Lattice(LatticeConfig::default());
    let params = LearningParams::default();
    println!(
        "training: alpha={} epsilon={} episodes={} step cap={} seed={}",
        params.alpha, params.epsilon, params.episodes, params.max_steps_per_episode, params.seed
    );

    let experiment = run_q_learning_experiment(&config, &params).unwrap();

    println!("\nepisode-length profile (mean steps per 2000-episode block):");
    for (block, chunk) in experiment.logs.chunks(2000).enumerate() {
        let mean_steps: f64 =
            chunk.iter().map(|l| l.steps as f64).sum::<f64>() / chunk.len() as f64;
        let mean_return: f64 =
            chunk.iter().map(|l| l.discounted_return).sum::<f64>() / chunk.len() as f64;
        println!(
            "  episodes {:>5}..{:<5} mean steps {:6.1}, mean discounted return {:8.3}",
            block * 2000,
            block * 2000 + chunk.len(),
            mean_steps,
            mean_return
        );
    }

    let trajectory: Vec<String> = experiment
        .optimal_trajectory
        .iter()
        .map(|s| format!("{s}"))
        .collect();
    println!("\noracle trajectory (state indices): {}", trajectory.join(" -> "));
    println!(
        "learned policy agrees with the oracle on {}% of trajectory decisions",
        100.0 * experiment.agreement_ratio
    );

    // The learned action-values approximate the optimal values along the way.
    println!("\nstate  max_a Q(s,a)");
    for &s in &experiment.optimal_trajectory {
        match experiment.q.max_available(s) {
            Some(q) => println!("{s:>5}  {q:10.4}"),
            None => println!("{s:>5}  terminal"),
        }
    }
}
