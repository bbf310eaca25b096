//! Exact planning on the two-site swap system, checked against its closed form.

use ea_mdp::env::{build_two_site, TwoSiteSpec};
use ea_mdp::mdp::{
    bellman_operator, greedy_policy, two_site_closed_form, value_iteration, ValueFunction,
};

fn main() {
    let spec = TwoSiteSpec::default();
    let mdp = build_two_site(&spec).unwrap();

    let rewards = mdp.state_reward_table();
    println!(
        "expected entry rewards: r(s1) = {:.6}, r(s2) = {:.6}",
        rewards[0], rewards[1]
    );

    // One application of the Bellman operator to V = 0 returns the reward of
    // the (only) successor.
    let tv = bellman_operator(&ValueFunction::zeros(2), &mdp);
    println!("T0 = ({:.6}, {:.6})", tv[0], tv[1]);

    let (v, iterations) = value_iteration(&mdp, 1e-12, 100_000).unwrap();
    println!(
        "\nvalue iteration converged in {iterations} sweeps: V = ({:.12}, {:.12})",
        v[0], v[1]
    );

    // The infinite swap admits a closed form in the two entry rewards.
    let (v1, v2) = two_site_closed_form(rewards[0], rewards[1], spec.gamma).unwrap();
    println!("closed form:                            V = ({v1:.12}, {v2:.12})");
    println!(
        "max deviation: {:.3e}",
        (v[0] - v1).abs().max((v[1] - v2).abs())
    );

    let policy = greedy_policy(&v, &mdp);
    println!(
        "\ngreedy policy: s1 -> action {:?}, s2 -> action {:?} (the single swap action)",
        policy.action(0).unwrap(),
        policy.action(1).unwrap()
    );

    // Discount scan: how the fixed point grows with gamma.
    println!("\ngamma    V*(s1)      V*(s2)");
    for i in 0..10 {
        let gamma = i as f64 / 10.0;
        let mdp = build_two_site(&TwoSiteSpec::default().with_gamma(gamma)).unwrap();
        let (v, _) = value_iteration(&mdp, 1e-12, 100_000).unwrap();
        println!("{gamma:.2}    {:9.6}   {:9.6}", v[0], v[1]);
    }
}
