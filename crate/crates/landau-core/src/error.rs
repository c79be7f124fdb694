use alloc::string::String;
use core::fmt;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter violated a documented precondition.
    InvalidArgument(String),
    /// A probe block changed by more than the tolerance when the quadrature order was doubled.
    QuadratureUnderresolved {
        /// Largest entry change observed on the probe.
        change: f64,
    },
    /// Leading eigenvalues moved under grid refinement.
    GridUnderresolved {
        /// Largest relative eigenvalue shift.
        shift: f64,
    },
    /// An iterative eigensolver exhausted its sweep budget.
    NoConvergence {
        /// Sweeps performed.
        sweeps: usize,
    },
    /// The Fourier window leaves a tail above tolerance.
    WindowInsufficient {
        /// Estimated tail mass.
        tail: f64,
    },
    /// The radial profile returned a non-finite value.
    ProfileNotEvaluable,
    /// A symbol kind cannot supply the requested derivatives.
    DerivativesUnavailable,
    /// Neumann series for the effective Hamiltonian does not contract.
    SeriesDivergent {
        /// The contraction factor `h |E0| |W|`.
        factor: f64,
    },
    /// A residual fell below the floor where rounding dominates.
    ResidualAtNoiseFloor {
        /// Parameter at which it happened.
        h: f64,
        /// The residual.
        residual: f64,
    },
    /// Band eigenvectors reach the highest retained oscillator level.
    BandTruncationLeakage {
        /// Largest mass found on that level.
        mass: f64,
    },
    /// The symbol kind has no kernel transform in this construction.
    KernelTransformUnavailable,
    /// A desk-scale size cap would be exceeded.
    CapExceeded {
        /// What was being sized.
        what: &'static str,
        /// Requested size.
        requested: usize,
        /// Allowed maximum.
        cap: usize,
    },
    /// Too few usable cells for a regression.
    InsufficientCells {
        /// Usable cells.
        found: usize,
    },
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            Error::QuadratureUnderresolved { change } => {
                write!(f, "quadrature underresolved (probe change {change:.3e})")
            }
            Error::GridUnderresolved { shift } => {
                write!(f, "grid underresolved (relative eigenvalue shift {shift:.3e})")
            }
            Error::NoConvergence { sweeps } => write!(f, "no convergence after {sweeps} sweeps"),
            Error::WindowInsufficient { tail } => {
                write!(f, "window insufficient (tail estimate {tail:.3e})")
            }
            Error::ProfileNotEvaluable => f.write_str("profile not evaluable"),
            Error::DerivativesUnavailable => f.write_str("derivatives unavailable"),
            Error::SeriesDivergent { factor } => {
                write!(f, "series divergent (contraction factor {factor:.3})")
            }
            Error::ResidualAtNoiseFloor { h, residual } => {
                write!(f, "residual at noise floor ({residual:.3e} at h = {h})")
            }
            Error::BandTruncationLeakage { mass } => {
                write!(f, "band truncation leakage (top-level mass {mass:.3e})")
            }
            Error::KernelTransformUnavailable => f.write_str("kernel transform unavailable"),
            Error::CapExceeded { what, requested, cap } => {
                write!(f, "{what} too large: {requested} exceeds cap {cap}")
            }
            Error::InsufficientCells { found } => write!(f, "insufficient cells ({found})"),
        }
    }
}

impl core::error::Error for Error {}
