use thiserror::Error;

/// Errors shared across the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Inputs span a subspace of lower dimension than requested.
    #[error("degenerate span: {0}")]
    DegenerateSpan(String),

    /// The subspace lies outside the standard chart (leading block singular).
    #[error("chart domain: {0}")]
    ChartDomain(String),

    /// Combinatorial guard tripped (e.g. C(n,k) too large for the minor sum).
    #[error("size guard: {0}")]
    SizeGuard(String),

    /// A non-integrable field was passed to an integrator outside
    /// divergence-demonstration mode.
    #[error("non-integrable field: {0}")]
    NonIntegrable(String),

    #[error("configuration error: {0}")]
    Config(String),
}
