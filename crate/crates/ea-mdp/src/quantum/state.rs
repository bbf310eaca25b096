use num_complex::Complex64;

use super::{QuantumError, NORM_TOL};

/// A finite-dimensional complex amplitude vector.
///
/// Carries evidence superpositions ∑ⱼ cⱼ∣j⟩, measurement outcomes, and full
/// tensor-product states. A vector is flagged `normalized` when its squared
/// norm ∑ⱼ‖cⱼ‖² is 1 within [`NORM_TOL`]; operations that require unit states
/// check the flag rather than re-deriving it.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    normalized: bool,
}

impl StateVector {
    /// Builds a vector from raw amplitudes, rejecting NaN/infinite entries.
    pub fn new(amps: Vec<Complex64>) -> Result<Self, QuantumError> {
        if amps.is_empty() {
            return Err(QuantumError::EmptyVector);
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(QuantumError::NonFiniteAmplitude);
        }
        let norm_sqr: f64 = amps.iter().map(Complex64::norm_sqr).sum();
        let normalized = (norm_sqr - 1.0).abs() <= NORM_TOL;
        Ok(Self { amps, normalized })
    }

    /// Like [`StateVector::new`] but additionally requires unit norm.
    pub fn unit(amps: Vec<Complex64>) -> Result<Self, QuantumError> {
        let v = Self::new(amps)?;
        if !v.normalized {
            return Err(QuantumError::NotNormalized {
                norm_sqr: v.norm_sqr(),
            });
        }
        Ok(v)
    }

    /// Convenience constructor for purely real amplitudes.
    pub fn from_reals(reals: &[f64]) -> Result<Self, QuantumError> {
        Self::new(reals.iter().map(|&re| Complex64::new(re, 0.0)).collect())
    }

    /// The basis vector ∣j⟩ in a space of the given dimension.
    ///
    /// Panics if `j >= dim` or `dim == 0`.
    pub fn basis(dim: usize, j: usize) -> Self {
        assert!(j < dim, "basis index {j} out of range for dimension {dim}");
        let mut amps = vec![Complex64::ZERO; dim];
        amps[j] = Complex64::ONE;
        Self {
            amps,
            normalized: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, j: usize) -> Complex64 {
        self.amps[j]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Scales the vector to unit norm.
    ///
    /// This is deliberately explicit: constructors never renormalize on their
    /// own, so a caller holding a non-unit vector (for example an outcome
    /// written down with a spurious prefactor) must opt in.
    pub fn renormalized(&self) -> Result<Self, QuantumError> {
        let norm_sqr = self.norm_sqr();
        if norm_sqr <= f64::EPSILON {
            return Err(QuantumError::ZeroNorm { norm_sqr });
        }
        let inv = 1.0 / norm_sqr.sqrt();
        let amps = self.amps.iter().map(|a| a * inv).collect();
        Ok(Self {
            amps,
            normalized: true,
        })
    }

    /// Multiplies amplitude `j` by the phase factor e^{iθ}.
    ///
    /// A unit-modulus factor cannot change any magnitude, so the
    /// normalization flag carries over.
    pub fn with_phase(&self, j: usize, theta: f64) -> Self {
        let mut amps = self.amps.clone();
        amps[j] *= Complex64::cis(theta);
        Self {
            amps,
            normalized: self.normalized,
        }
    }

    /// Kronecker product `self ⊗ other`; see [`tensor_product`].
    pub fn tensor(&self, other: &Self) -> Self {
        tensor_product(self, other)
    }
}

/// Inner product ⟨bra∣ket⟩ = ∑ⱼ conj(braⱼ)·ketⱼ.
///
/// Conjugation applies to the `bra` argument.
pub fn inner_product(bra: &StateVector, ket: &StateVector) -> Result<Complex64, QuantumError> {
    if bra.dim() != ket.dim() {
        return Err(QuantumError::DimensionMismatch {
            left: bra.dim(),
            right: ket.dim(),
        });
    }
    Ok(bra
        .amps
        .iter()
        .zip(&ket.amps)
        .map(|(b, k)| b.conj() * k)
        .sum())
}

/// Kronecker product of two state vectors.
///
/// The result has dimension `a.dim() * b.dim()` with entry
/// `(i * b.dim()) + j` equal to `aᵢ·bⱼ`. The normalization flag is preserved
/// when both inputs carry it.
pub fn tensor_product(a: &StateVector, b: &StateVector) -> StateVector {
    let mut amps = Vec::with_capacity(a.dim() * b.dim());
    for ai in &a.amps {
        for bj in &b.amps {
            amps.push(ai * bj);
        }
    }
    let norm_sqr: f64 = amps.iter().map(Complex64::norm_sqr).sum();
    StateVector {
        amps,
        normalized: (a.normalized && b.normalized) || (norm_sqr - 1.0).abs() <= NORM_TOL,
    }
}

/// Probability ‖⟨outcome∣state⟩‖² of projecting `state` onto `outcome`.
///
/// Both vectors must be unit-normalized; the result is clamped into [0, 1]
/// (round-off can overshoot by at most ~1e-12 for valid inputs).
pub fn measurement_probability(
    outcome: &StateVector,
    state: &StateVector,
) -> Result<f64, QuantumError> {
    require_normalized(outcome)?;
    require_normalized(state)?;
    let p = inner_product(outcome, state)?.norm_sqr();
    Ok(p.clamp(0.0, 1.0))
}

/// Squared magnitudes (‖cⱼ‖²)ⱼ of a normalized evidence state.
///
/// The entries sum to 1 and are insensitive to the phase of each amplitude;
/// they give the probability of each individual piece of evidence.
pub fn w_mapping(ea_state: &StateVector) -> Result<Vec<f64>, QuantumError> {
    require_normalized(ea_state)?;
    Ok(ea_state.amps.iter().map(|c| c.norm_sqr()).collect())
}

pub(crate) fn require_normalized(v: &StateVector) -> Result<(), QuantumError> {
    if !v.is_normalized() {
        return Err(QuantumError::NotNormalized {
            norm_sqr: v.norm_sqr(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_THIRDS: f64 = 2.0 / 3.0;
    const ONE_THIRD: f64 = 1.0 / 3.0;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // Test-only complex arithmetic on raw (re, im) pairs, kept independent of
    // the num-complex path used by the implementation.
    fn brute_conj_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
        // conj(a) * b = (a.0 - i a.1)(b.0 + i b.1)
        (a.0 * b.0 + a.1 * b.1, a.0 * b.1 - a.1 * b.0)
    }

    #[test]
    fn inner_product_identity_and_orthogonality() {
        let e0 = StateVector::basis(3, 0);
        let e1 = StateVector::basis(3, 1);
        assert_eq!(inner_product(&e0, &e0).unwrap(), c(1.0, 0.0));
        assert_eq!(inner_product(&e0, &e1).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn inner_product_conjugates_the_bra() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bra = StateVector::new(vec![c(s, 0.0), c(0.0, s)]).unwrap();
        let ket = StateVector::from_reals(&[TWO_THIRDS, TWO_THIRDS]).unwrap();

        let got = inner_product(&bra, &ket).unwrap();

        // Brute-force expansion with independent arithmetic:
        // conj(1/sqrt2)*(2/3) + conj(i/sqrt2)*(2/3) = (2/3)(1 - i)/sqrt2.
        let mut acc = (0.0, 0.0);
        for (b, k) in [((s, 0.0), (TWO_THIRDS, 0.0)), ((0.0, s), (TWO_THIRDS, 0.0))] {
            let t = brute_conj_mul(b, k);
            acc = (acc.0 + t.0, acc.1 + t.1);
        }
        assert!((got.re - acc.0).abs() < 1e-15);
        assert!((got.im - acc.1).abs() < 1e-15);
        let expected = TWO_THIRDS / std::f64::consts::SQRT_2;
        assert!((got.re - expected).abs() < 1e-15);
        assert!((got.im + expected).abs() < 1e-15);
        assert!((got.norm_sqr() - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn inner_product_rejects_dimension_mismatch() {
        let a = StateVector::basis(2, 0);
        let b = StateVector::basis(3, 0);
        assert!(matches!(
            inner_product(&a, &b),
            Err(QuantumError::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn tensor_of_basis_vectors() {
        let (n, m) = (3, 4);
        for i in 0..n {
            for j in 0..m {
                let t = StateVector::basis(n, i).tensor(&StateVector::basis(m, j));
                assert_eq!(t, StateVector::basis(n * m, i * m + j));
            }
        }
    }

    #[test]
    fn tensor_embeds_evidence_amplitudes_in_a_site_block() {
        // |s1> (x) (c0|0> + c1|1> + c2|2>) places (c0, c1, c2) in block 1.
        let site = StateVector::basis(2, 1);
        let ea = StateVector::from_reals(&[TWO_THIRDS, TWO_THIRDS, ONE_THIRD]).unwrap();
        let full = site.tensor(&ea);
        assert_eq!(full.dim(), 6);
        for j in 0..3 {
            assert_eq!(full.amp(j), c(0.0, 0.0));
            assert_eq!(full.amp(3 + j), ea.amp(j));
        }
        assert!(full.is_normalized());
    }

    #[test]
    fn measurement_probability_of_self_is_one() {
        let psi = StateVector::from_reals(&[TWO_THIRDS, TWO_THIRDS, ONE_THIRD]).unwrap();
        assert!((measurement_probability(&psi, &psi).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measurement_probability_third_amplitude() {
        let psi = StateVector::from_reals(&[TWO_THIRDS, TWO_THIRDS, ONE_THIRD]).unwrap();
        let e2 = StateVector::basis(3, 2);
        assert!((measurement_probability(&e2, &psi).unwrap() - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn measurement_probability_with_complex_outcome() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = StateVector::from_reals(&[TWO_THIRDS, ONE_THIRD, TWO_THIRDS]).unwrap();
        let plus = StateVector::new(vec![c(s, 0.0), c(0.0, s), c(0.0, 0.0)]).unwrap();
        let minus = StateVector::new(vec![c(s, 0.0), c(0.0, -s), c(0.0, 0.0)]).unwrap();
        let e2 = StateVector::basis(3, 2);

        let p_plus = measurement_probability(&plus, &psi).unwrap();
        let p_minus = measurement_probability(&minus, &psi).unwrap();
        let p_e2 = measurement_probability(&e2, &psi).unwrap();

        assert!((p_plus - 5.0 / 18.0).abs() < 1e-15);
        assert!((p_minus - 5.0 / 18.0).abs() < 1e-15);
        assert!((p_e2 - 4.0 / 9.0).abs() < 1e-15);
        assert!((p_plus + p_minus + p_e2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measurement_probability_requires_unit_inputs() {
        let psi = StateVector::from_reals(&[1.0, 1.0]).unwrap();
        let e0 = StateVector::basis(2, 0);
        assert!(matches!(
            measurement_probability(&e0, &psi),
            Err(QuantumError::NotNormalized { .. })
        ));
    }

    #[test]
    fn w_mapping_examples() {
        let e1 = StateVector::basis(4, 1);
        assert_eq!(w_mapping(&e1).unwrap(), vec![0.0, 1.0, 0.0, 0.0]);

        let psi = StateVector::from_reals(&[TWO_THIRDS, TWO_THIRDS, ONE_THIRD]).unwrap();
        let w = w_mapping(&psi).unwrap();
        assert!((w[0] - 4.0 / 9.0).abs() < 1e-15);
        assert!((w[1] - 4.0 / 9.0).abs() < 1e-15);
        assert!((w[2] - 1.0 / 9.0).abs() < 1e-15);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn w_mapping_drops_phases() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = StateVector::new(vec![c(s, 0.0), c(0.0, s)]).unwrap();
        let w = w_mapping(&psi).unwrap();
        assert!((w[0] - 0.5).abs() < 1e-15);
        assert!((w[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn constructors_reject_bad_amplitudes() {
        assert!(matches!(
            StateVector::new(vec![]),
            Err(QuantumError::EmptyVector)
        ));
        assert!(matches!(
            StateVector::new(vec![c(f64::NAN, 0.0)]),
            Err(QuantumError::NonFiniteAmplitude)
        ));
        assert!(matches!(
            StateVector::unit(vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(QuantumError::NotNormalized { .. })
        ));
    }

    #[test]
    fn renormalized_recovers_unit_norm() {
        let v = StateVector::from_reals(&[3.0, 4.0]).unwrap();
        let u = v.renormalized().unwrap();
        assert!(u.is_normalized());
        assert!((u.amp(0).re - 0.6).abs() < 1e-15);
        assert!((u.amp(1).re - 0.8).abs() < 1e-15);

        let zero = StateVector::from_reals(&[0.0, 0.0]).unwrap();
        assert!(matches!(
            zero.renormalized(),
            Err(QuantumError::ZeroNorm { .. })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_amps(dim: usize) -> impl Strategy<Value = Vec<Complex64>> {
            proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim)
                .prop_map(|v| v.into_iter().map(|(re, im)| c(re, im)).collect())
        }

        fn arb_unit(dim: usize) -> impl Strategy<Value = StateVector> {
            arb_amps(dim).prop_filter_map("norm too small", |amps| {
                StateVector::new(amps).ok()?.renormalized().ok()
            })
        }

        proptest! {
            #[test]
            fn tensor_preserves_unit_norm(a in arb_unit(3), b in arb_unit(4)) {
                let t = tensor_product(&a, &b);
                prop_assert!(t.is_normalized());
                prop_assert!((t.norm_sqr() - 1.0).abs() < 1e-12);
            }

            #[test]
            fn w_mapping_is_phase_insensitive(
                psi in arb_unit(4),
                j in 0usize..4,
                theta in 0.0..std::f64::consts::TAU,
            ) {
                let w0 = w_mapping(&psi).unwrap();
                let w1 = w_mapping(&psi.with_phase(j, theta)).unwrap();
                for (a, b) in w0.iter().zip(&w1) {
                    prop_assert!((a - b).abs() < 1e-15);
                }
            }

            #[test]
            fn w_mapping_sums_to_one(psi in arb_unit(5)) {
                let w = w_mapping(&psi).unwrap();
                prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            }
        }
    }
}
