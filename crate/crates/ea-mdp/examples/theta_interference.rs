//! Amplitude phases shift outcome probabilities, so the optimal value
//! oscillates as a phase factor is swept over a full turn.

use std::f64::consts::TAU;

use ea_mdp::env::{build_two_site, TwoSiteSpec};
use ea_mdp::mdp::value_iteration;

fn main() {
    // c1 = (2/3, (2/3)e^{i theta1}, 1/3): theta1 rotates the second
    // amplitude. Magnitudes never change, yet the first two outcomes of the
    // bundled family mix |0> and |1>, so their probabilities pick up a
    // sin(theta1) interference term.
    println!("theta1/tau   V*(s1)      V*(s2)      bar");
    let points = 33;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for i in 0..points {
        let theta1 = TAU * i as f64 / (points - 1) as f64;
        let spec = TwoSiteSpec::default().with_phases(theta1, 0.0);
        let mdp = build_two_site(&spec).unwrap();
        let (v, _) = value_iteration(&mdp, 1e-12, 100_000).unwrap();
        min = min.min(v[0]);
        max = max.max(v[0]);
        let width = ((v[0] + 2.0) * 8.0).round().max(0.0) as usize;
        println!(
            "{:10.4}   {:9.6}   {:9.6}   {}",
            theta1 / TAU,
            v[0],
            v[1],
            "#".repeat(width)
        );
    }
    println!("\nV*(s1) oscillation: min {min:.6}, max {max:.6}, span {:.6}", max - min);

    // Both phases together trace a two-dimensional interference surface.
    println!("\nV*(s1) on a coarse theta1 x theta2 grid:");
    print!("{:>8}", "");
    for j in 0..9 {
        print!(" {:>8.2}", TAU * j as f64 / 8.0);
    }
    println!();
    for i in 0..9 {
        let theta1 = TAU * i as f64 / 8.0;
        print!("{theta1:>8.2}");
        for j in 0..9 {
            let theta2 = TAU * j as f64 / 8.0;
            let spec = TwoSiteSpec::default().with_phases(theta1, theta2);
            let mdp = build_two_site(&spec).unwrap();
            let (v, _) = value_iteration(&mdp, 1e-12, 100_000).unwrap();
            print!(" {:>8.4}", v[0]);
        }
        println!();
    }
}
