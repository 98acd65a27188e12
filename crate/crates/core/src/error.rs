use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoherenceError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("grids do not match: {0}")]
    GridMismatch(String),

    #[error("spectral maximum lies on the grid boundary at index {index}; shift not measurable on this grid")]
    BoundaryPeak { index: usize },

    #[error("spectrum has no strict interior maximum")]
    NoStrictMaximum,

    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    #[error("degree of coherence |mu| = {magnitude} exceeds 1 at sample {index}")]
    CoherenceBound { index: usize, magnitude: f64 },

    #[error("coherence undefined at sample {index}: source spectrum vanishes where the cross term does not")]
    UndefinedCoherence { index: usize },

    #[error("source and field points coincide; the real part diverges, use the coincidence limit instead")]
    Coincidence,

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("degenerate linewidth {width}: the antisymmetric channel does not decay")]
    DegenerateLinewidth { width: f64 },

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("quadrature did not converge: relative disagreement {disagreement:e} after grid doubling")]
    Convergence { disagreement: f64 },

    #[error("unsupported query: {0}")]
    UnsupportedQuery(String),

    #[error("grid too narrow: {0}")]
    GridTooNarrow(String),

    #[error("invalid correlation matrix: {0}")]
    InvalidCorrelation(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("malformed table data: {0}")]
    Table(String),
}

impl CoherenceError {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        CoherenceError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures of a numerical method rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            CoherenceError::Convergence { .. }
                | CoherenceError::NumericalDegeneracy(_)
                | CoherenceError::GridTooNarrow(_)
                | CoherenceError::BoundaryPeak { .. }
                | CoherenceError::NoStrictMaximum
        )
    }
}

pub type Result<T> = std::result::Result<T, CoherenceError>;
