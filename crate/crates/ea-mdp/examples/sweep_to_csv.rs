//! Parameter sweeps written as deterministic CSV files.

use std::fs::File;
use std::io::BufWriter;

use ea_mdp::env::{EnvironmentConfig, LatticeConfig, TwoSiteConfig};
use ea_mdp::sweep::{
    run_sweep, write_sweep_csv, Axis, SweepGrid, SweepParameter, SweepSolver, SweepSpec,
};

fn main() {
    let out_dir = std::env::temp_dir().join("ea-mdp-sweeps");
    std::fs::create_dir_all(&out_dir).unwrap();

    // Discount sweep on the two-site system; the closed form makes this the
    // easiest output to sanity-check by hand.
    let spec = SweepSpec {
        base: EnvironmentConfig::TwoSite(TwoSiteConfig::default()),
        grid: SweepGrid::One(Axis::linspace(SweepParameter::Gamma, 0.0, 0.95, 20).unwrap()),
        solver: SweepSolver::ValueIteration,
    };
    let result = run_sweep(&spec).unwrap();
    let path = out_dir.join("two_site_gamma.csv");
    write_sweep_csv(&mut BufWriter::new(File::create(&path).unwrap()), &spec, &result).unwrap();
    println!("wrote {} ({} rows)", path.display(), result.rows.len());

    // Sweeping one outcome reward on the lattice moves the optimal policy:
    // the fingerprint column changes and the transitions are bracketed.
    let spec = SweepSpec {
        base: EnvironmentConfig::Lattice(LatticeConfig::default()),
        grid: SweepGrid::One(
            Axis::linspace(SweepParameter::RewardIndex(3), -1.0, 3.0, 17).unwrap(),
        ),
        solver: SweepSolver::ValueIteration,
    };
    let result = run_sweep(&spec).unwrap();
    let path = out_dir.join("lattice_reward3.csv");
    write_sweep_csv(&mut BufWriter::new(File::create(&path).unwrap()), &spec, &result).unwrap();
    println!("wrote {} ({} rows)", path.display(), result.rows.len());
    for (a, b) in &result.transitions {
        println!("  optimal policy changes somewhere in reward3 = [{a:.3}, {b:.3}]");
    }

    // A coarse phase contour over the lattice outcome family.
    let tau = std::f64::consts::TAU;
    let spec = SweepSpec {
        base: EnvironmentConfig::Lattice(LatticeConfig::default()),
        grid: SweepGrid::Two(
            Axis::linspace(SweepParameter::Phi1, 0.0, tau, 17).unwrap(),
            Axis::linspace(SweepParameter::Phi2, 0.0, tau, 17).unwrap(),
        ),
        solver: SweepSolver::ValueIteration,
    };
    let result = run_sweep(&spec).unwrap();
    let path = out_dir.join("lattice_phi_contour.csv");
    write_sweep_csv(&mut BufWriter::new(File::create(&path).unwrap()), &spec, &result).unwrap();
    println!("wrote {} ({} rows)", path.display(), result.rows.len());

    let min = result
        .rows
        .iter()
        .map(|r| r.probe_values[0])
        .fold(f64::INFINITY, f64::min);
    let max = result
        .rows
        .iter()
        .map(|r| r.probe_values[0])
        .fold(f64::NEG_INFINITY, f64::max);
    println!("V*(start) over the phase contour ranges from {min:.4} to {max:.4}");
}
