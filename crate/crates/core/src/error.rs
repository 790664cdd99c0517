use thiserror::Error;

/// Failure modes of the solvers and the data loaders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypergeometric pole: c = {c} is a non-positive integer within the first {n} terms")]
    Pole { c: f64, n: u32 },

    #[error("reality condition violated: (m^2 + beta')^2 = {lhs} < beta^2 = {rhs}, u would be imaginary")]
    Reality { lhs: f64, rhs: f64 },

    #[error("Lambda is imaginary: 1/4 + alpha(alpha-1) + lambda = {0} < 0")]
    ImaginaryLambda(f64),

    #[error(
        "no bound state: depth condition A - 1/2 - lambda - Lambda > n_r(n_r + 2 Lambda + 1) fails (sqrt(c) = {sqrt_c} <= 0)"
    )]
    NoBoundState { sqrt_c: f64 },

    #[error("no bound state: energy is non-negative, lambda*C0 >= (sqrt c)^2 (eps^2 = {eps_sq} <= 0)")]
    NonNegativeEnergy { eps_sq: f64 },

    #[error("bracketing failed: {0}")]
    Bracketing(String),

    #[error("no convergence after {iterations} bisections (bracket width {width})")]
    Convergence { iterations: usize, width: f64 },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for malformed input files and I/O problems, as opposed to physics or domain failures.
    pub fn is_data_error(&self) -> bool {
        matches!(self, Error::Schema(_) | Error::Io(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
