use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A transition tensor violates the machine invariants (row sums,
    /// entry ranges, dimensions).
    #[error("invalid machine: {0}")]
    InvalidMachine(String),

    /// The state-to-state chain has more than one closed communicating
    /// class, so no unique stationary distribution exists.
    #[error("non-unique stationary distribution: {0}")]
    NonUniqueStationary(String),

    /// A sampling start state is out of range.
    #[error("invalid start state {index}: machine has {num_states} states")]
    InvalidStart { index: usize, num_states: usize },

    /// Operands have incompatible dimensions.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix expected to be symmetric is not, beyond tolerance.
    #[error("matrix is not symmetric: {0}")]
    NotSymmetric(String),

    /// An operator fails the density-operator checks (trace or positivity).
    #[error("not a density operator: {0}")]
    NotDensityOperator(String),

    /// A parameter lies outside its documented domain.
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    /// A complex matrix fails the density-matrix checks.
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    /// A symbol sequence is too short for the requested history order.
    #[error("sequence too short: {0}")]
    TooShort(String),

    /// Empirical counts are below the minimum required for reconstruction.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Parameters hit a structural degeneracy (e.g. a vanishing
    /// normalization denominator).
    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    /// An alphabet definition is invalid (empty or repeated symbols).
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    /// A symbol sequence contains entries outside its alphabet.
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
