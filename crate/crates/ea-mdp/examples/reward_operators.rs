//! The reward operator R = sum r(w)|w><w| and its two equivalent reward routes.

use ea_mdp::env::two_site_outcomes;
use ea_mdp::quantum::{
    bijective_reward, build_reward_operator, expected_reward, separated_reward_operator,
    OutcomeMode, OutcomeSet, RewardSpec, StateVector,
};

fn main() {
    let outcomes = two_site_outcomes();
    let rewards = RewardSpec::new(vec![-1.0, 1.0, 2.0]).unwrap();

    let op = build_reward_operator(&outcomes, &rewards).unwrap();
    println!("reward operator over the two-site outcome family:");
    for i in 0..op.dim() {
        let row: Vec<String> = (0..op.dim())
            .map(|j| {
                let e = op.entry(i, j);
                format!("{:+.2}{:+.2}i", e.re, e.im)
            })
            .collect();
        println!("  [ {} ]", row.join("  "));
    }

    // Route one: probability-weighted sum over outcomes.
    // Route two: quadratic form of the Hermitian operator.
    let psi = StateVector::from_reals(&[2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0]).unwrap();
    let via_sum = expected_reward(&psi, &outcomes, &rewards).unwrap();
    let via_op = op.expectation(&psi).unwrap();
    println!("\nprobability route: {via_sum:.12}");
    println!("operator route:    {via_op:.12}");

    // Against the standard basis the phases drop out and the reward is the
    // classical expectation over evidence probabilities.
    let basis = OutcomeSet::standard_basis(3, OutcomeMode::EaSeparated);
    let classical = expected_reward(&psi, &basis, &rewards).unwrap();
    let weights = bijective_reward(&psi, rewards.values()).unwrap();
    println!("\nstandard-basis route:  {classical:.12}");
    println!("evidence-weight route: {weights:.12}");

    // For rewards that depend only on the evidence component, the full-space
    // operator is the block-diagonal lift I_n (x) R.
    let n_sites = 2;
    let lifted = separated_reward_operator(n_sites, &outcomes, &rewards).unwrap();
    println!(
        "\nlift to {} sites: {}x{} operator",
        n_sites,
        lifted.dim(),
        lifted.dim()
    );
    for site in 0..n_sites {
        let full = StateVector::basis(n_sites, site).tensor(&psi);
        let value = lifted.expectation(&full).unwrap();
        println!("  <site {site} (x) psi| I(x)R |...> = {value:.12}");
    }
}
