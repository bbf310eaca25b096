//! Loading, validating, and round-tripping JSON environment configs.

use ea_mdp::env::{load_config, EnvironmentConfig};

fn main() {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

    for name in ["two_site_fig1.json", "lattice_fig3.json"] {
        let path = format!("{fixtures}/{name}");
        let (config, mdp) = load_config(&path).unwrap();
        println!(
            "{name}: kind={} states={} actions={} gamma={} terminals={:?}",
            config.kind(),
            mdp.n_states(),
            mdp.n_actions(),
            mdp.gamma(),
            mdp.terminals()
        );
        let rewards = mdp.state_reward_table();
        println!(
            "  entry rewards range [{:.3}, {:.3}]",
            rewards.iter().copied().fold(f64::INFINITY, f64::min),
            rewards.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        );
    }

    // Documents omit whatever matches the defaults; serialization restores
    // the full resolved form.
    let minimal = r#"{ "kind": "two_site", "gamma": 0.5 }"#;
    let config = EnvironmentConfig::from_json(minimal).unwrap();
    println!("\nminimal document resolves to:\n{}", config.to_json_pretty());

    // Schema violations name the offending key.
    for (label, doc) in [
        ("unknown key", r#"{ "kind": "two_site", "gama": 0.5 }"#),
        (
            "non-unit amplitudes",
            r#"{ "kind": "two_site", "c1": [[1, 0], [1, 0], [0, 0]] }"#,
        ),
        (
            "goal on an obstacle",
            r#"{ "kind": "lattice", "obstacles": [[5, 5]] }"#,
        ),
    ] {
        let result = EnvironmentConfig::from_json(doc).and_then(|c| c.build().map(|_| c));
        match result {
            Err(err) => println!("\n{label}: {err}"),
            Ok(_) => unreachable!(),
        }
    }
}
