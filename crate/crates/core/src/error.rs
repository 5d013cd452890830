use thiserror::Error;

use crate::graph::VertexId;

/// Everything that can go wrong across the library.
///
/// Variants fall in three families, which the CLI maps onto exit codes:
/// invalid input, an exceeded search budget, and a violated internal
/// invariant (a bug or a counterexample, never a user mistake).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(VertexId),
    #[error("edge {0}-{1} not present")]
    MissingEdge(VertexId, VertexId),
    #[error("edge {0}-{1} already present")]
    EdgeExists(VertexId, VertexId),
    #[error("graph has {0} vertices; at most {max} supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed graph6 text: {0}")]
    Graph6(String),
    #[error("malformed recipe at line {line}: {reason}")]
    RecipeParse { line: usize, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("step {step}: {reason}")]
    Step { step: usize, reason: String },

    #[error("{what} budget exceeded: size {size} > {budget}")]
    BudgetExceeded {
        what: &'static str,
        size: usize,
        budget: usize,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }

    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_budget(what: &'static str, size: usize, budget: usize) -> Result<()> {
    if size > budget {
        Err(Error::BudgetExceeded { what, size, budget })
    } else {
        Ok(())
    }
}
