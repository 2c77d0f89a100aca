use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid initial condition: {0}")]
    InvalidInitialCondition(String),

    #[error("step size underflow at x = {x}")]
    StepUnderflow { x: f64 },

    #[error("trajectories belong to different problems")]
    MismatchedProblems,

    #[error("q is not -lambda/p on segment {segment}")]
    NotLemmaForm { segment: usize },

    #[error("tangential zero at x = {x} with no turning point nearby")]
    AnomalousTangentialZero { x: f64 },

    #[error("segment {segment} is not a valid Atkinson block: {reason}")]
    BadAtkinsonBlock { segment: usize, reason: String },

    #[error("p-block {block} has zero net integral of 1/p (c_n would be infinite)")]
    InfiniteRecurrenceCoefficient { block: usize },

    #[error("recurrence coefficient c[{index}] is zero")]
    ZeroRecurrenceCoefficient { index: usize },

    #[error("q vanishes on segment {segment}; reciprocal transformation inadmissible")]
    ReciprocalInadmissible { segment: usize },

    #[error("theorem precondition not met: {0}")]
    PreconditionFailed(String),

    #[error("observed zero pattern violates the trichotomy: {0}")]
    TrichotomyViolation(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
