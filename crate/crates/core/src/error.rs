use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial has a zero constant term")]
    ZeroConstantTerm,

    #[error("polynomial is not reciprocal (even degree, palindromic coefficients)")]
    NotReciprocal,

    #[error("polynomial vanishes identically mod 2")]
    ZeroModTwo,

    #[error("invalid coefficient set: {0}")]
    InvalidCoeffSet(String),

    #[error("coefficient {coeff} at index {index} is not in the coefficient set")]
    CoefficientOutsideSet { coeff: String, index: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("root finding did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("target must lie strictly inside the open unit disk (|alpha| = {modulus})")]
    TargetNotInUnitDisk { modulus: f64 },

    #[error("target is not a root of the polynomial (relative residual {residual:e})")]
    TargetNotARoot { residual: f64 },

    #[error("could not certify a positive lower modulus bound on the contour (isolation failure)")]
    IsolationFailure,

    #[error("coefficient set supports none of the requested construction cases")]
    UnsupportedCoeffSet,

    #[error("certificate is malformed: {0}")]
    CertificateParse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
