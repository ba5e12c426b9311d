use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TorsionError {
    #[error("contact condition fails: θ∧dθ = 0")]
    DegenerateContact,
    #[error("J is not compatible with dθ (positivity fails)")]
    NonCompatibleJ,
    #[error("structure-equation system is singular")]
    SingularSystem,
    #[error("conformal factor has a nonzero imaginary part")]
    NonRealFactor,
    #[error("unsupported tensor type: {0}")]
    UnsupportedIndexType(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("operator not available on this background: {0}")]
    UnsupportedBackground(String),
    #[error("contact-form scale fell below the extinction guard at t = {time}")]
    ExtinctionReached { time: f64 },
    #[error("integration became unstable at t = {time}")]
    StepUnstable { time: f64 },
    #[error("at least {needed} samples are required, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("family evaluation failed at u = {u}: {reason}")]
    FamilyEvaluationFailed { u: f64, reason: String },
}

pub type Result<T> = std::result::Result<T, TorsionError>;
