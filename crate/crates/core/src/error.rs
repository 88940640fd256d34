use thiserror::Error;

/// Errors produced by the solvers and verifiers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A function could not be evaluated (non-finite value) at a node.
    #[error("evaluation error at x = {node}: {reason}")]
    Evaluation { node: String, reason: String },

    /// The exchange step produced an unusable reference.
    #[error("exchange failure: {0}")]
    Exchange(String),

    /// An iterative solver hit its iteration budget.
    #[error("iteration limit of {iterations} reached (last gap {last_gap:e})")]
    IterationLimit { iterations: usize, last_gap: f64 },

    /// The conformal boundary iteration failed to converge.
    #[error("no convergence after {iterations} steps: {diagnostic}")]
    NonConvergence {
        iterations: usize,
        diagnostic: String,
    },

    /// The mesh cannot support the requested tolerance.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// A precondition on the input of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The input polynomial violates the cosine representation.
    #[error("representation violated at x = {x}: |(1 - p(x))/L| = {ratio}")]
    Representation { x: String, ratio: String },

    /// Serialized input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Internal inconsistency, e.g. an infeasible oracle program.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
