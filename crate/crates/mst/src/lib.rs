//! m-mode squeezed thermal (mST) Gaussian states.
//!
//! An mST state is a continuous-variable GHZ-type entangled state of `m`
//! bosonic modes degraded by equal thermal noise on every mode. It is fixed
//! by two parameters: the squeezing `r` and the thermal mean photon number
//! `N` per mode, or equivalently `lambda = tanh r` and `v = N/(N+1)`.
//!
//! The crate provides:
//!
//! - [`structmat`]: exact algebra for the two-parameter structured matrices
//!   `A(x, y)` that make every mST covariance computation closed-form, plus
//!   small dense symmetric/Hermitian eigen utilities.
//! - [`gaussian`]: covariance matrices, the Gibbs (exponential-form) matrix,
//!   symplectic data, entropies and reduced states of mST states.
//! - [`separability`]: classification of the tripartite (m = 3) states into
//!   fully inseparable / biseparable / fully separable, via generic matrix
//!   tests (PPT and a convex feasibility search) and via closed forms, each
//!   validating the other.
//! - [`bounds`]: relative entropy between mST states along two independent
//!   computation paths, the minimized upper bound on the relative entropy of
//!   entanglement, the teleportation bound for pure states, and the
//!   general-m ratio checks.
//! - [`cli`]: deterministic CSV/JSON emitters behind the `mst` binary.
//!
//! All quantities are computed in natural log units; conversion to bits is a
//! presentation concern handled at the CLI boundary.

use thiserror::Error;

pub mod bounds;
pub mod cli;
pub mod gaussian;
pub mod separability;
pub mod structmat;

/// Errors across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("mode index {mode} out of range for a {modes}-mode state")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires a 3-mode state, got m = {0}")]
    NotTripartite(usize),

    #[error("Gibbs matrix is undefined for a pure state (N = 0)")]
    PureStateNoGibbs,

    #[error("relative entropy diverges: the reference state is pure")]
    PureReferenceState,

    #[error("state is not pure (N = {0})")]
    NotPure(f64),

    #[error("ratio undefined: the two-mode bound vanishes at this point")]
    DegenerateRatio,

    #[error("bisection bracket does not straddle the boundary")]
    NoSignChange,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
