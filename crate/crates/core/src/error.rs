use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// The variants are grouped so that a caller (the CLI in particular) can map
/// them onto exit codes: [`Error::is_domain`] separates bad inputs from
/// numerical failures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size limit exceeded: {what} = {value} (max {max})")]
    SizeLimit {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("degenerate system: {0}")]
    Degenerate(String),
    #[error("quadrature did not converge: err {err:.3e} > tolerance {tol:.3e} after {subdivisions} subdivisions")]
    NonConvergence {
        err: f64,
        tol: f64,
        subdivisions: usize,
    },
    #[error("ill-conditioned Gram matrix: condition estimate {0:.3e}")]
    IllConditioned(f64),
    #[error("singular constraint system: {0}")]
    SingularConstraint(String),
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("zero norm: {0}")]
    ZeroNorm(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by inputs outside an operation's domain.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Pole(_)
                | Error::Domain(_)
                | Error::SizeLimit { .. }
                | Error::UnsupportedModel(_)
                | Error::ZeroNorm(_)
                | Error::Parse(_)
                | Error::Degenerate(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
