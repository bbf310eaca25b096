use num_complex::Complex64;
use rand::Rng;

use super::state::require_normalized;
use super::{inner_product, QuantumError, StateVector, NORM_TOL};

/// Which Hilbert space an outcome family measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeMode {
    /// Outcomes live in the full site-and-evidence product space.
    FullSpace,
    /// Outcomes live in the evidence space only; rewards depend solely on the
    /// evidence component of the next state.
    EaSeparated,
}

/// Result of checking a candidate outcome family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// Every outcome has unit norm within [`NORM_TOL`].
    pub unit_norms: bool,
    /// Pairwise inner products have magnitude at most [`NORM_TOL`].
    pub orthogonal: bool,
    /// ∑ ∣ω⟩⟨ω∣ equals the identity entrywise within [`NORM_TOL`].
    pub complete: bool,
    /// The largest violation observed across all three checks.
    pub max_violation: f64,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.unit_norms && self.orthogonal && self.complete
    }
}

/// Checks unit norms, pairwise orthogonality, and the completeness relation
/// for a candidate outcome family over a space of dimension `space_dim`.
///
/// Does not mutate or consume its input. Errors on an empty list or when the
/// outcomes do not all share `space_dim`.
pub fn validate_outcome_set(
    space_dim: usize,
    outcomes: &[StateVector],
) -> Result<ValidationReport, QuantumError> {
    if outcomes.is_empty() {
        return Err(QuantumError::EmptyOutcomeSet);
    }
    for omega in outcomes {
        if omega.dim() != space_dim {
            return Err(QuantumError::DimensionMismatch {
                left: space_dim,
                right: omega.dim(),
            });
        }
    }

    let mut max_violation = 0.0f64;

    let mut unit_norms = true;
    for omega in outcomes {
        let v = (omega.norm_sqr() - 1.0).abs();
        max_violation = max_violation.max(v);
        unit_norms &= v <= NORM_TOL;
    }

    let mut orthogonal = true;
    for (i, a) in outcomes.iter().enumerate() {
        for b in &outcomes[i + 1..] {
            let overlap = inner_product(a, b)?.norm();
            max_violation = max_violation.max(overlap);
            orthogonal &= overlap <= NORM_TOL;
        }
    }

    // Completeness: sum of projectors minus the identity, entrywise.
    let mut complete = true;
    for row in 0..space_dim {
        for col in 0..space_dim {
            let mut sum = Complex64::ZERO;
            for omega in outcomes {
                sum += omega.amp(row) * omega.amp(col).conj();
            }
            let target = if row == col {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            let v = (sum - target).norm();
            max_violation = max_violation.max(v);
            complete &= v <= NORM_TOL;
        }
    }

    Ok(ValidationReport {
        unit_norms,
        orthogonal,
        complete,
        max_violation,
    })
}

/// A complete, orthonormal family of measurement outcome vectors.
///
/// Construction is fail-fast: a candidate family that violates unit norms,
/// orthogonality, or completeness is rejected with its [`ValidationReport`]
/// instead of being silently repaired. Use [`OutcomeSet::renormalized`] when
/// the vectors are only off by per-vector scale factors.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeSet {
    space_dim: usize,
    outcomes: Vec<StateVector>,
    mode: OutcomeMode,
}

impl OutcomeSet {
    pub fn new(
        space_dim: usize,
        outcomes: Vec<StateVector>,
        mode: OutcomeMode,
    ) -> Result<Self, QuantumError> {
        let report = validate_outcome_set(space_dim, &outcomes)?;
        if !report.is_valid() {
            return Err(QuantumError::InvalidOutcomeSet { report });
        }
        Ok(Self {
            space_dim,
            outcomes,
            mode,
        })
    }

    /// Scales each candidate vector to unit norm, then validates.
    ///
    /// Only per-vector scale is repaired; orthogonality or completeness
    /// defects still reject the family.
    pub fn renormalized(
        space_dim: usize,
        outcomes: Vec<StateVector>,
        mode: OutcomeMode,
    ) -> Result<Self, QuantumError> {
        let outcomes = outcomes
            .iter()
            .map(StateVector::renormalized)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(space_dim, outcomes, mode)
    }

    /// The family {∣0⟩, …, ∣dim−1⟩}.
    pub fn standard_basis(dim: usize, mode: OutcomeMode) -> Self {
        let outcomes = (0..dim).map(|j| StateVector::basis(dim, j)).collect();
        Self {
            space_dim: dim,
            outcomes,
            mode,
        }
    }

    /// A random orthonormal family obtained by Gram-Schmidt on random
    /// complex vectors. Handy for property tests and exploration.
    pub fn random<R: Rng + ?Sized>(dim: usize, mode: OutcomeMode, rng: &mut R) -> Self {
        loop {
            let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
            'next_vector: while basis.len() < dim {
                let mut v: Vec<Complex64> = (0..dim)
                    .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                    .collect();
                for b in &basis {
                    let overlap: Complex64 =
                        b.iter().zip(&v).map(|(bi, vi)| bi.conj() * vi).sum();
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= overlap * bi;
                    }
                }
                let norm_sqr: f64 = v.iter().map(Complex64::norm_sqr).sum();
                if norm_sqr < 1e-6 {
                    continue 'next_vector; // nearly dependent draw, try again
                }
                let inv = 1.0 / norm_sqr.sqrt();
                basis.push(v.into_iter().map(|a| a * inv).collect());
            }
            let outcomes: Vec<StateVector> = basis
                .into_iter()
                .map(|amps| StateVector::new(amps).expect("finite amplitudes"))
                .collect();
            if let Ok(set) = Self::new(dim, outcomes, mode) {
                return set;
            }
        }
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn mode(&self) -> OutcomeMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn outcomes(&self) -> &[StateVector] {
        &self.outcomes
    }

    pub fn iter(&self) -> std::slice::Iter<'_, StateVector> {
        self.outcomes.iter()
    }
}

/// Scalar rewards index-aligned with the outcomes of a paired [`OutcomeSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct RewardSpec {
    rewards: Vec<f64>,
}

impl RewardSpec {
    pub fn new(rewards: Vec<f64>) -> Result<Self, QuantumError> {
        if rewards.iter().any(|r| !r.is_finite()) {
            return Err(QuantumError::NonFiniteReward);
        }
        Ok(Self { rewards })
    }

    pub fn len(&self) -> usize {
        self.rewards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rewards.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.rewards
    }

    pub fn get(&self, k: usize) -> f64 {
        self.rewards[k]
    }

    /// Errors unless the reward count matches the outcome count of `set`.
    pub fn check_alignment(&self, set: &OutcomeSet) -> Result<(), QuantumError> {
        if self.rewards.len() != set.len() {
            return Err(QuantumError::RewardLengthMismatch {
                rewards: self.rewards.len(),
                outcomes: set.len(),
            });
        }
        Ok(())
    }

    /// Replaces the reward at index `k`.
    pub fn with_reward(&self, k: usize, value: f64) -> Result<Self, QuantumError> {
        if !value.is_finite() {
            return Err(QuantumError::NonFiniteReward);
        }
        let mut rewards = self.rewards.clone();
        rewards[k] = value;
        Ok(Self { rewards })
    }
}

pub(crate) fn require_unit_family(set: &OutcomeSet) -> Result<(), QuantumError> {
    for omega in set.iter() {
        require_normalized(omega)?;
    }
    Ok(())
}
