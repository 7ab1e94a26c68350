//! Error type shared across the synthesis and analysis routines.

use thiserror::Error;

/// Failure modes surfaced by this crate.
///
/// Synthesis routines distinguish structural problems (a target or seed that
/// cannot be used at all) from numerical ones (an optimizer that did not
/// reach its tolerance); the latter carry the best residual reached so a
/// caller can decide whether to retry with a different seed.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// A product of zero factors was requested.
    #[error("empty product")]
    EmptyProduct,

    /// The synthesis target is the identity (up to phase); the scheme's
    /// parameterization degenerates and no sequence is needed.
    #[error("trivial target")]
    TrivialTarget,

    /// The scanned branch of the three-pulse area equation has no root.
    #[error("no three-pulse solution in branch")]
    NoThreePulseSolution,

    /// No five-pulse phase root reproduces the target gate.
    #[error("no five-pulse solution")]
    NoFivePulseSolution,

    /// A closed-form branch is singular at the requested parameter.
    #[error("branch singularity at this φ₁")]
    BranchSingularity,

    /// An iterative solver exhausted its restart budget without meeting its
    /// tolerance; `residual` is the best residual norm reached.
    #[error("optimizer stagnation: best residual {residual:.3e}")]
    Stagnation { residual: f64 },

    /// A scalar argument lies outside the contract of the routine.
    #[error("{name} out of range: {value}")]
    OutOfRange { name: &'static str, value: f64 },

    /// A matrix argument is not a valid density matrix (Hermitian,
    /// unit-trace, positive semidefinite within tolerance).
    #[error("not a density matrix")]
    NotDensityMatrix,

    /// A sequence or design has the wrong number of segments for the solver.
    #[error("need {expected} segments, got {got}")]
    SegmentCount { expected: usize, got: usize },

    /// The injection channel denominator vanished.
    #[error("singular channel denominator")]
    SingularDenominator,
}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
