//! Exact planning on the bundled 5x5 lattice: value grid, greedy moves, and
//! the optimal trajectory from start to goal.

use ea_mdp::env::{build_lattice, LatticeAction, LatticeSpec};
use ea_mdp::mdp::{greedy_policy, policy_evaluation, value_iteration};

fn main() {
    let spec = LatticeSpec::default();
    let mdp = build_lattice(&spec).unwrap();

    println!(
        "{}x{} lattice, start {:?}, goal {:?}, obstacles {:?}",
        spec.width, spec.height, spec.start, spec.goal, spec.obstacles
    );

    println!("\nper-site entry rewards (phi1 = phi2 = 0, interference off):");
    print_grid(&spec, |s| format!("{:6.2}", mdp.state_reward_table()[s]));

    let (v, iterations) = value_iteration(&mdp, 1e-12, 200_000).unwrap();
    println!("\noptimal values after {iterations} sweeps:");
    print_grid(&spec, |s| format!("{:6.2}", v[s]));

    let policy = greedy_policy(&v, &mdp);
    println!("\ngreedy moves (o = obstacle, G = goal):");
    print_grid(&spec, |s| {
        let site = spec.site_of_index(s);
        if spec.obstacles.contains(&site) {
            return "     o".into();
        }
        match policy.action(s) {
            None => "     G".into(),
            Some(a) => format!(
                "     {}",
                LatticeAction::from_index(a).map_or('?', LatticeAction::letter)
            ),
        }
    });

    // The greedy policy attains the optimal values.
    let v_pi = policy_evaluation(&mdp, &policy, 1e-12).unwrap();
    println!(
        "\n|V_greedy - V*| = {:.3e}",
        v.sup_distance(&v_pi)
    );

    print!("optimal trajectory:");
    let mut state = spec.start_index();
    print!(" {:?}", spec.site_of_index(state));
    let mut total = 0.0;
    let mut discount = 1.0;
    while let Some(action) = policy.action(state) {
        let row = mdp.transition_row(state, action);
        state = row.iter().position(|&p| p == 1.0).unwrap();
        total += discount * mdp.state_reward_table()[state];
        discount *= spec.gamma;
        print!(" -> {:?}", spec.site_of_index(state));
    }
    println!("\ndiscounted return along it: {total:.12} (= V*(start) {:.12})", v[spec.start_index()]);
}

fn print_grid(spec: &LatticeSpec, cell: impl Fn(usize) -> String) {
    // Print top row (largest y) first so the grid reads with y upward.
    for y in (1..=spec.height).rev() {
        let row: Vec<String> = (1..=spec.width)
            .map(|x| cell(spec.site_index((x, y))))
            .collect();
        println!("  y={y} {}", row.join(" "));
    }
}
