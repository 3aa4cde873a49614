use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArg(String),
    #[error("evaluation outside domain: {0}")]
    Domain(String),
    #[error("ODE integration failed: {0}")]
    OdeFailure(String),
    #[error("frame degenerate: {0}")]
    DegenerateFrame(String),
    #[error("convention failure: {0}")]
    Convention(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("internal error: {0}")]
    Internal(String),
}
