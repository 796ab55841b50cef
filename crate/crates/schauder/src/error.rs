//! Error type shared by the whole crate.

use core::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong when building or analysing frames.
///
/// Variants distinguish *caller* errors (mismatched shapes, parameters
/// out of range, exact mode requested where only bounds are available)
/// from *numerical* failures (singular transfer operator, contraction
/// factor at or above 1, iteration caps).
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A coordinate slice does not match the dimension of its space.
    DimensionMismatch {
        /// Dimension demanded by the space.
        expected: usize,
        /// Length actually supplied.
        got: usize,
    },
    /// Two sequences that must pair up elementwise have different lengths.
    LengthMismatch {
        /// Length demanded by the context.
        expected: usize,
        /// Length actually supplied.
        got: usize,
    },
    /// Objects from different spaces (dimension or exponent differ) were mixed.
    SpaceMismatch,
    /// An exponent outside `[1, ∞]` (or NaN) was supplied.
    InvalidExponent {
        /// The offending value.
        p: f64,
    },
    /// A pair sequence fails the frame identity at the required tolerance.
    NotAFrame {
        /// Measured residual `‖Σ aₙ ⊗ bₙ* − I‖` (upper bound).
        residual: f64,
        /// Tolerance the residual was held to.
        tol: f64,
    },
    /// Exact sign enumeration was requested for more terms than the cap allows.
    EnumerationCapExceeded {
        /// Number of terms requested.
        terms: usize,
        /// Configured cap.
        cap: usize,
    },
    /// An exact value was requested for an exponent where only certified
    /// bounds are available (exact norms exist for `p ∈ {1, 2, ∞}`).
    ExactNormUnavailable,
    /// A contraction factor outside `[0, 1)` was supplied where a
    /// convergent geometric series is required.
    ContractionOutOfRange {
        /// The offending factor.
        contraction: f64,
    },
    /// The claimed contraction factor is demonstrably below the measured
    /// operator norm it is supposed to dominate.
    ContractionUnderestimates {
        /// Factor supplied by the caller.
        claimed: f64,
        /// Measured norm bound that the claimed factor fails to dominate.
        measured: f64,
    },
    /// An iterative computation hit its hard cap before certifying its target.
    IterationCapExceeded {
        /// The cap that was hit.
        cap: usize,
    },
    /// A matrix that must be inverted is singular to working precision.
    Singular,
    /// A matrix is too ill-conditioned for its inverse to be trusted.
    IllConditioned {
        /// Condition-number estimate.
        condition: f64,
    },
    /// A perturbation criterion came out unsatisfied and no override was given.
    UnsatisfiedCriterion {
        /// Upper end of the criterion value (must be `< 1` to certify).
        value: f64,
    },
    /// An invertibility witness failed its certification residual.
    WitnessResidual {
        /// Measured `‖T·R − I‖` (upper bound).
        residual: f64,
        /// Tolerance it was held to.
        tol: f64,
    },
    /// An emitted frame failed re-validation at the required tolerance.
    EmittedFrameResidual {
        /// Measured residual of the emitted frame.
        residual: f64,
        /// Tolerance it was held to.
        tol: f64,
    },
    /// A parameter violated a documented precondition.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: space has dimension {expected}, got {got} coordinates")
            }
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected} elements, got {got}")
            }
            Error::SpaceMismatch => write!(f, "objects belong to different spaces"),
            Error::InvalidExponent { p } => {
                write!(f, "invalid exponent p = {p}; need 1 <= p <= inf")
            }
            Error::NotAFrame { residual, tol } => {
                write!(f, "pair sequence is not a frame: residual {residual:.3e} exceeds tolerance {tol:.3e}")
            }
            Error::EnumerationCapExceeded { terms, cap } => {
                write!(f, "exact enumeration over {terms} terms exceeds the cap of {cap}")
            }
            Error::ExactNormUnavailable => {
                write!(f, "exact norms are only available for p in {{1, 2, inf}}; request bounds instead")
            }
            Error::ContractionOutOfRange { contraction } => {
                write!(f, "contraction factor {contraction} is not in [0, 1)")
            }
            Error::ContractionUnderestimates { claimed, measured } => {
                write!(f, "claimed contraction {claimed} is below the measured norm {measured}")
            }
            Error::IterationCapExceeded { cap } => {
                write!(f, "iteration cap of {cap} exceeded before reaching the target tolerance")
            }
            Error::Singular => write!(f, "matrix is singular to working precision"),
            Error::IllConditioned { condition } => {
                write!(f, "matrix condition estimate {condition:.3e} is too large to invert reliably")
            }
            Error::UnsatisfiedCriterion { value } => {
                write!(f, "criterion value {value} is not < 1; pass the override to emit uncertified frames")
            }
            Error::WitnessResidual { residual, tol } => {
                write!(f, "witness residual {residual:.3e} exceeds certification tolerance {tol:.3e}")
            }
            Error::EmittedFrameResidual { residual, tol } => {
                write!(f, "emitted frame residual {residual:.3e} exceeds tolerance {tol:.3e}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
