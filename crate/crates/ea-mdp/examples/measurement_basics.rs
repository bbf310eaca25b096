//! States, outcome families, and projective measurement probabilities.

use ea_mdp::env::two_site_outcomes;
use ea_mdp::quantum::{
    measurement_probability, validate_outcome_set, Complex64, OutcomeMode, OutcomeSet, StateVector,
};

fn main() {
    // An evidence superposition over three basis states. The amplitudes are
    // real here, but any complex amplitudes of unit total norm work.
    let psi = StateVector::from_reals(&[2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0]).unwrap();
    println!("state dim {}, normalized: {}", psi.dim(), psi.is_normalized());

    // Measuring against the standard basis reads off squared magnitudes.
    for j in 0..3 {
        let p = measurement_probability(&StateVector::basis(3, j), &psi).unwrap();
        println!("P(basis {j}) = {p:.6}");
    }

    // The bundled interference-sensitive family mixes |0> and |1> with
    // opposite relative phases.
    let outcomes = two_site_outcomes();
    let report = validate_outcome_set(outcomes.space_dim(), outcomes.outcomes()).unwrap();
    println!(
        "\ntwo-site outcome family: unit_norms={} orthogonal={} complete={} (max violation {:.2e})",
        report.unit_norms, report.orthogonal, report.complete, report.max_violation
    );

    let mut total = 0.0;
    for (k, omega) in outcomes.iter().enumerate() {
        let p = measurement_probability(omega, &psi).unwrap();
        total += p;
        println!("P(outcome {k}) = {p:.6}");
    }
    println!("sum of probabilities = {total:.12}");

    // A phase on one amplitude changes interference-sensitive probabilities
    // even though every squared magnitude stays the same.
    let phased = psi.with_phase(1, std::f64::consts::FRAC_PI_2);
    println!("\nafter a pi/2 phase on amplitude 1:");
    for (k, omega) in outcomes.iter().enumerate() {
        let p = measurement_probability(omega, &phased).unwrap();
        println!("P(outcome {k}) = {p:.6}");
    }

    // Vectors written with a spurious prefactor fail validation and are
    // rejected at construction; renormalization is an explicit opt-in.
    let half = Complex64::new(0.5, 0.0);
    let scaled = vec![
        StateVector::new(vec![half, Complex64::new(0.0, 0.5), Complex64::ZERO]).unwrap(),
        StateVector::new(vec![half, Complex64::new(0.0, -0.5), Complex64::ZERO]).unwrap(),
        StateVector::new(vec![Complex64::ZERO, Complex64::ZERO, half]).unwrap(),
    ];
    let report = validate_outcome_set(3, &scaled).unwrap();
    println!(
        "\nhalf-scaled family: unit_norms={} complete={} (max violation {})",
        report.unit_norms, report.complete, report.max_violation
    );
    match OutcomeSet::new(3, scaled.clone(), OutcomeMode::EaSeparated) {
        Err(err) => println!("construction fails: {err}"),
        Ok(_) => unreachable!(),
    }
    let repaired = OutcomeSet::renormalized(3, scaled, OutcomeMode::EaSeparated).unwrap();
    println!("renormalized family has {} unit outcomes", repaired.len());
}
