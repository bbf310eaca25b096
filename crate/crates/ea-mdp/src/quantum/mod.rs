//! Complex linear algebra for evidence superpositions: state vectors,
//! projective-measurement outcome sets, and Hermitian reward operators.

mod operator;
mod outcome;
mod state;

pub use num_complex::Complex64;

pub use operator::{
    bijective_reward, build_reward_operator, expected_reward, separated_expected_reward,
    separated_reward_operator, HermitianOperator,
};
pub use outcome::{validate_outcome_set, OutcomeMode, OutcomeSet, RewardSpec, ValidationReport};
pub use state::{
    inner_product, measurement_probability, tensor_product, w_mapping, StateVector,
};

use thiserror::Error;

/// Tolerance for unit-norm, orthogonality, and completeness checks.
pub const NORM_TOL: f64 = 1e-9;
/// Tolerance for Hermitian symmetry of operator entries.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Largest imaginary residue tolerated when an expectation value is cast to a real.
pub const IMAG_RESIDUE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuantumError {
    #[error("state vector must have at least one amplitude")]
    EmptyVector,

    #[error("amplitudes must be finite (no NaN or infinity)")]
    NonFiniteAmplitude,

    #[error("incompatible spaces: dimension {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("state vector is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("cannot renormalize a vector with squared norm {norm_sqr}")]
    ZeroNorm { norm_sqr: f64 },

    #[error("outcome set must contain at least one outcome")]
    EmptyOutcomeSet,

    #[error(
        "invalid outcome set (unit_norms: {}, orthogonal: {}, complete: {}, max violation {:e})",
        report.unit_norms, report.orthogonal, report.complete, report.max_violation
    )]
    InvalidOutcomeSet { report: ValidationReport },

    #[error("reward list has {rewards} entries but the outcome set has {outcomes}")]
    RewardLengthMismatch { rewards: usize, outcomes: usize },

    #[error("rewards must be finite")]
    NonFiniteReward,

    #[error("matrix is not Hermitian: max |A - A^dagger| entry {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("expectation value has imaginary residue {residue:e} above {IMAG_RESIDUE_TOL:e}")]
    ImaginaryResidue { residue: f64 },

    #[error("expected an outcome set over the evidence space only (ea-separated mode)")]
    NotSeparated,
}
