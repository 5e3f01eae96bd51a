//! Error types shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("basis matrix {index} is not antisymmetric (residual {residual:.3e})")]
    NotAntisymmetric { index: usize, residual: f64 },

    #[error("basis of {0} is linearly dependent")]
    LinearlyDependent(String),

    #[error("bracket of {label} does not close in the given basis (residual {residual:.3e})")]
    BracketNotClosed { label: String, residual: f64 },

    #[error("bilinear form is degenerate (min/max singular-value ratio {ratio:.3e}); not semisimple")]
    DegenerateForm { ratio: f64 },

    #[error("form is not positive definite where required")]
    NotPositiveDefinite,

    #[error("vectors are not orthonormal for the given form (residual {residual:.3e})")]
    NotOrthonormal { residual: f64 },

    #[error("rank deficiency at vector {index}: pivot norm {norm:.3e} below cutoff {cutoff:.3e}")]
    RankDeficient { index: usize, norm: f64, cutoff: f64 },

    #[error("{what} is not scalar (off-scalar residual {residual:.3e})")]
    NonScalar { what: String, residual: f64 },

    #[error("metric coefficients must be positive, got {0}")]
    NonPositiveMetric(f64),

    #[error("polynomial has all coefficients zero")]
    ZeroPolynomial,

    #[error("no positive real root: no Einstein metric in this family")]
    NoPositiveRoot,

    #[error("invariant-metric ansatz is incomplete: invariant-form dimension on m is {dim}, need 2")]
    IncompleteAnsatz { dim: usize },

    #[error("chain invariant violated: {which} (residual {residual:.3e})")]
    ChainInvariantViolated { which: String, residual: f64 },

    #[error("{label} is not realized: no matrix construction is shipped for this case")]
    NotRealized { label: String },

    #[error("expected {expected} complement vectors, found {found}")]
    ComplementRank { expected: usize, found: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Serde(#[from] serde_json::Error),
}
