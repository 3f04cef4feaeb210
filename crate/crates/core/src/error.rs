use thiserror::Error;

/// Errors reported by the simulation and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rotation axis is not a unit vector (norm {norm})")]
    NonUnitAxis { norm: f64 },
    #[error("angular frequency must be finite and nonnegative, got {0}")]
    InvalidOmega(f64),
    #[error("duration must be finite and nonnegative, got {0}")]
    InvalidDuration(f64),
    #[error("state is not normalized (norm² = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("initial state is not cyclic under the schedule (overlap {overlap})")]
    NonCyclic { overlap: f64 },
    #[error("path is not closed (first/last points {gap} apart)")]
    OpenPath { gap: f64 },
    #[error("chi out of range: {0} not in [0, pi/2]")]
    ChiOutOfRange(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("no accessory field frequency is set")]
    MissingAccessory,
    #[error("coupling constant must be positive and finite, got {0}")]
    InvalidCoupling(f64),
    #[error("at least 2 samples per segment are required, got {0}")]
    TooFewSamples(usize),
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("invalid Bloch path: {0}")]
    InvalidPath(&'static str),
    #[error("invalid noise spec: {0}")]
    InvalidNoise(&'static str),
    #[error("matrix is not unitary (defect {defect})")]
    NotUnitary { defect: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
