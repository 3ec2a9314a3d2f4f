use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error("inadmissible recurrence direction: {0}")]
    UnstableDirection(String),

    #[error("boundary point: {0}")]
    Boundary(String),

    #[error("degenerate saddle frame: {0}")]
    DegenerateFrame(String),

    #[error("series not applicable: {0}")]
    SeriesInvalid(String),

    #[error("too close to the transition point for the plain saddle expansion (use erfc-uniform): {0}")]
    NearTransition(String),

    #[error("infeasible target z = {z}: inversion in x requires z <= I_y(p,q) = {bound}")]
    Infeasible { z: f64, bound: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
