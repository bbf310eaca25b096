use nalgebra::DMatrix;
use num_complex::Complex64;

use super::outcome::require_unit_family;
use super::state::require_normalized;
use super::{
    measurement_probability, OutcomeMode, OutcomeSet, QuantumError, RewardSpec, StateVector,
    HERMITIAN_TOL, IMAG_RESIDUE_TOL,
};

/// A Hermitian observable over a finite-dimensional complex space.
///
/// Construction verifies A = A† entrywise within [`HERMITIAN_TOL`], so every
/// value of this type has a real spectrum and real expectation values up to
/// round-off.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    mat: DMatrix<Complex64>,
}

impl HermitianOperator {
    pub fn from_matrix(mat: DMatrix<Complex64>) -> Result<Self, QuantumError> {
        assert_eq!(mat.nrows(), mat.ncols(), "operator matrix must be square");
        if mat.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(QuantumError::NonFiniteAmplitude);
        }
        let mut residual = 0.0f64;
        for i in 0..mat.nrows() {
            for j in 0..=i {
                residual = residual.max((mat[(i, j)] - mat[(j, i)].conj()).norm());
            }
        }
        if residual > HERMITIAN_TOL {
            return Err(QuantumError::NotHermitian { residual });
        }
        Ok(Self { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[(i, j)]
    }

    /// Applies the operator to a vector, A∣ψ⟩.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector, QuantumError> {
        if psi.dim() != self.dim() {
            return Err(QuantumError::DimensionMismatch {
                left: self.dim(),
                right: psi.dim(),
            });
        }
        let amps = (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| self.mat[(i, j)] * psi.amp(j))
                    .sum()
            })
            .collect();
        StateVector::new(amps)
    }

    /// Expectation value ⟨ψ∣A∣ψ⟩ as a real number.
    ///
    /// The quadratic form of a Hermitian matrix is real up to round-off; any
    /// imaginary residue above [`IMAG_RESIDUE_TOL`] is surfaced as an error
    /// rather than silently discarded.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64, QuantumError> {
        require_normalized(psi)?;
        let applied = self.apply(psi)?;
        let value: Complex64 = psi
            .amps()
            .iter()
            .zip(applied.amps())
            .map(|(p, a)| p.conj() * a)
            .sum();
        if value.im.abs() >= IMAG_RESIDUE_TOL {
            return Err(QuantumError::ImaginaryResidue { residue: value.im });
        }
        Ok(value.re)
    }

    /// The block-diagonal lift I_n ⊗ A to a product space with `n` site
    /// blocks.
    pub fn kron_identity_lift(&self, n: usize) -> Self {
        let identity = DMatrix::<Complex64>::identity(n, n);
        Self {
            mat: identity.kronecker(&self.mat),
        }
    }
}

/// Builds the reward operator R = ∑ r̃(ω)·∣ω⟩⟨ω∣ for an outcome family.
///
/// The result is Hermitian by construction and its spectrum is exactly the
/// reward multiset: R∣ωₖ⟩ = r̃(ωₖ)∣ωₖ⟩.
pub fn build_reward_operator(
    outcomes: &OutcomeSet,
    rewards: &RewardSpec,
) -> Result<HermitianOperator, QuantumError> {
    rewards.check_alignment(outcomes)?;
    let dim = outcomes.space_dim();
    let mut mat = DMatrix::<Complex64>::zeros(dim, dim);
    for (omega, &r) in outcomes.iter().zip(rewards.values()) {
        for i in 0..dim {
            for j in 0..dim {
                mat[(i, j)] += r * omega.amp(i) * omega.amp(j).conj();
            }
        }
    }
    HermitianOperator::from_matrix(mat)
}

/// Expected reward ∑_ω P_ω(state)·r̃(ω) of measuring `state` against an
/// outcome family.
///
/// This is the probability-sum route; it agrees with the operator route
/// ⟨state∣R∣state⟩ obtained from [`build_reward_operator`].
pub fn expected_reward(
    state: &StateVector,
    outcomes: &OutcomeSet,
    rewards: &RewardSpec,
) -> Result<f64, QuantumError> {
    rewards.check_alignment(outcomes)?;
    require_unit_family(outcomes)?;
    let mut sum = 0.0;
    for (omega, &r) in outcomes.iter().zip(rewards.values()) {
        sum += r * measurement_probability(omega, state)?;
    }
    Ok(sum)
}

/// Expected reward when each outcome coincides with an evidence basis vector.
///
/// With a bijective outcome-to-basis mapping the phases drop out and the
/// reward reduces to the classical expectation ∑ⱼ r̃(j)·‖cⱼ‖².
pub fn bijective_reward(
    ea_state: &StateVector,
    basis_rewards: &[f64],
) -> Result<f64, QuantumError> {
    if basis_rewards.len() != ea_state.dim() {
        return Err(QuantumError::DimensionMismatch {
            left: basis_rewards.len(),
            right: ea_state.dim(),
        });
    }
    let w = super::w_mapping(ea_state)?;
    let mut sum = 0.0;
    for (r, wj) in basis_rewards.iter().zip(&w) {
        sum += r * wj;
    }
    Ok(sum)
}

/// Expected reward of an evidence state against an evidence-space outcome
/// family: ∑ r̃(ω)·‖⟨ω∣ψ⟩‖².
///
/// Equals the full-space computation that applies I_n ⊗ R to ∣s⟩⊗∣ψ⟩, for any
/// number of site blocks n; the outcome family must be in
/// [`OutcomeMode::EaSeparated`].
pub fn separated_expected_reward(
    ea_state: &StateVector,
    ea_outcomes: &OutcomeSet,
    rewards: &RewardSpec,
) -> Result<f64, QuantumError> {
    if ea_outcomes.mode() != OutcomeMode::EaSeparated {
        return Err(QuantumError::NotSeparated);
    }
    if ea_state.dim() != ea_outcomes.space_dim() {
        return Err(QuantumError::DimensionMismatch {
            left: ea_state.dim(),
            right: ea_outcomes.space_dim(),
        });
    }
    expected_reward(ea_state, ea_outcomes, rewards)
}

/// The full-space reward operator I_n ⊗ R for a separated outcome family.
pub fn separated_reward_operator(
    n_sites: usize,
    ea_outcomes: &OutcomeSet,
    rewards: &RewardSpec,
) -> Result<HermitianOperator, QuantumError> {
    if ea_outcomes.mode() != OutcomeMode::EaSeparated {
        return Err(QuantumError::NotSeparated);
    }
    Ok(build_reward_operator(ea_outcomes, rewards)?.kron_identity_lift(n_sites))
}
