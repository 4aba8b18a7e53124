use thiserror::Error;

/// Errors raised by the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    /// A documented precondition was not met by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Hull input is affinely dependent within tolerance.
    #[error("degenerate point set: only {subset_size} affinely independent points found")]
    Degenerate { subset_size: usize },

    /// No closed form or quadrature exists for this body / index pair.
    #[error("no reference intrinsic volume for {body} (d={dim}) at ell={ell}")]
    UnsupportedReference {
        body: &'static str,
        dim: usize,
        ell: usize,
    },

    /// Intrinsic volume requested without an exact path and without a panel.
    #[error("ell={ell} in dimension {dim} has no exact path and no projection panel was supplied")]
    MissingPanel { dim: usize, ell: usize },

    #[error("sample variance is zero; cannot standardize")]
    ZeroVariance,

    /// Internal facet lattice became inconsistent.
    #[error("hull lattice invariant violated: {0}")]
    Lattice(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
