//! Sweep-level behavior across environments: policy transitions, refinement
//! bracketing, fixture round-trips, and the learning-backed solver.

use ea_mdp::env::{load_config, EnvironmentConfig, LatticeConfig, TwoSiteConfig};
use ea_mdp::learning::LearningParams;
use ea_mdp::mdp::value_iteration;
use ea_mdp::sweep::{
    run_sweep, write_sweep_csv, Axis, SweepGrid, SweepParameter, SweepSolver, SweepSpec,
};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn lattice_base() -> EnvironmentConfig {
    EnvironmentConfig::Lattice(LatticeConfig::default())
}

#[test]
fn reward_sweep_moves_the_optimal_policy_and_refinement_brackets_it() {
    let sweep_at = |points: usize| {
        let spec = SweepSpec {
            base: lattice_base(),
            grid: SweepGrid::One(
                Axis::linspace(SweepParameter::RewardIndex(3), -1.0, 3.0, points).unwrap(),
            ),
            solver: SweepSolver::ValueIteration,
        };
        run_sweep(&spec).unwrap()
    };

    let coarse = sweep_at(9);
    assert!(
        !coarse.transitions.is_empty(),
        "the optimal policy should change somewhere in [-1, 3]"
    );

    // Rerunning at 4x the resolution must bracket every coarse transition
    // within its original interval.
    let fine = sweep_at(33);
    for &(lo, hi) in &coarse.transitions {
        assert!(
            fine.transitions
                .iter()
                .any(|&(a, b)| a >= lo - 1e-12 && b <= hi + 1e-12),
            "no refined transition inside [{lo}, {hi}]: {:?}",
            fine.transitions
        );
    }
}

#[test]
fn phase_contours_cover_the_full_grid_in_csv() {
    let tau = std::f64::consts::TAU;
    let spec = SweepSpec {
        base: lattice_base(),
        grid: SweepGrid::Two(
            Axis::linspace(SweepParameter::Phi1, 0.0, tau, 9).unwrap(),
            Axis::linspace(SweepParameter::Phi2, 0.0, tau, 9).unwrap(),
        ),
        solver: SweepSolver::ValueIteration,
    };
    let result = run_sweep(&spec).unwrap();
    assert_eq!(result.rows.len(), 81);

    let mut csv = Vec::new();
    write_sweep_csv(&mut csv, &spec, &result).unwrap();
    let text = String::from_utf8(csv).unwrap();
    let data_rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("phi1,"))
        .count();
    assert_eq!(data_rows, 81);
    assert!(text.ends_with('\n'));
}

#[test]
fn learning_solver_sweeps_track_the_planner_at_the_probe() {
    // The learner visits the start state every episode, so its greedy value
    // there tracks the planner closely; far-off states may stay unexplored,
    // which is why the full-table fingerprints are only required to be
    // reproducible, not to match the planner's.
    let params = LearningParams {
        episodes: 3000,
        seed: 5,
        ..LearningParams::default()
    };
    let grid = || SweepGrid::One(Axis::from_values(
        SweepParameter::Gamma,
        vec![0.5, 0.9],
    ).unwrap());
    let planned = run_sweep(&SweepSpec {
        base: lattice_base(),
        grid: grid(),
        solver: SweepSolver::ValueIteration,
    })
    .unwrap();
    let learn = || {
        run_sweep(&SweepSpec {
            base: lattice_base(),
            grid: grid(),
            solver: SweepSolver::QLearning(params.clone()),
        })
        .unwrap()
    };
    let learned = learn();
    for (p, l) in planned.rows.iter().zip(&learned.rows) {
        assert!(
            (p.probe_values[0] - l.probe_values[0]).abs() <= 0.01,
            "gamma = {}: planned {} vs learned {}",
            p.values[0],
            p.probe_values[0],
            l.probe_values[0]
        );
        assert_eq!(l.iterations, params.episodes);
    }

    let again = learn();
    for (a, b) in learned.rows.iter().zip(&again.rows) {
        assert_eq!(a.fingerprint, b.fingerprint);
        assert_eq!(a.probe_values, b.probe_values);
    }
}

#[test]
fn bundled_fixtures_load_and_round_trip() {
    let (two_site, mdp) = load_config(format!("{FIXTURES}/two_site_fig1.json")).unwrap();
    assert_eq!(two_site.kind(), "two_site");
    assert!((mdp.state_reward_table()[0] - 2.0 / 9.0).abs() < 1e-12);
    let reparsed = EnvironmentConfig::from_json(&two_site.to_json_pretty()).unwrap();
    assert_eq!(two_site, reparsed);

    // The fixture must match the in-code defaults it documents.
    match &two_site {
        EnvironmentConfig::TwoSite(c) => {
            let defaults = TwoSiteConfig::default();
            assert_eq!(c.gamma, defaults.gamma);
            assert_eq!(c.rewards, defaults.rewards);
            for (got, want) in c.c1.iter().zip(&defaults.c1) {
                assert!((got.0 - want.0).abs() < 1e-15 && got.1 == want.1);
            }
        }
        other => panic!("unexpected config {other:?}"),
    }

    let (lattice, mdp) = load_config(format!("{FIXTURES}/lattice_fig3.json")).unwrap();
    assert_eq!(lattice.kind(), "lattice");
    assert_eq!(mdp.n_states(), 25);
    let reparsed = EnvironmentConfig::from_json(&lattice.to_json_pretty()).unwrap();
    assert_eq!(lattice, reparsed);

    // Fixture and in-code defaults build processes with identical reward
    // tables and optimal values.
    let default_mdp = EnvironmentConfig::Lattice(LatticeConfig::default())
        .build()
        .unwrap();
    for (a, b) in mdp
        .state_reward_table()
        .iter()
        .zip(default_mdp.state_reward_table())
    {
        assert!((a - b).abs() < 1e-12);
    }
    let (v_fixture, _) = value_iteration(&mdp, 1e-12, 200_000).unwrap();
    let (v_default, _) = value_iteration(&default_mdp, 1e-12, 200_000).unwrap();
    assert!(v_fixture.sup_distance(&v_default) < 1e-12);
}

#[test]
fn gamma_grid_includes_the_undiscounted_point() {
    let spec = SweepSpec {
        base: EnvironmentConfig::TwoSite(TwoSiteConfig::default()),
        grid: SweepGrid::One(Axis::linspace(SweepParameter::Gamma, 0.0, 0.9, 10).unwrap()),
        solver: SweepSolver::ValueIteration,
    };
    let result = run_sweep(&spec).unwrap();
    let first = &result.rows[0];
    assert_eq!(first.values[0], 0.0);
    assert!((first.probe_values[0] - 8.0 / 9.0).abs() < 1e-12);
    assert!((first.probe_values[1] - 2.0 / 9.0).abs() < 1e-12);
}
