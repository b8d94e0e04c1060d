use serde::Serialize;
use thiserror::Error;

use crate::trace::SolveTrace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller-supplied data violates an operation's precondition.
    #[error("input error: {0}")]
    Input(String),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    /// A constructive step could not produce the object its argument promises.
    /// Either an implementation bug or a counterexample; the payload carries
    /// everything needed to reproduce it.
    #[error("contract violated in {}: {}", .0.step, .0.detail)]
    Contract(Box<ContractViolation>),
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractViolation {
    pub step: String,
    pub detail: String,
    /// graph6 of the graph (or subgraph) the step was working on, when known.
    pub graph6: Option<String>,
    pub trace: SolveTrace,
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn contract(step: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Contract(Box::new(ContractViolation {
            step: step.into(),
            detail: detail.into(),
            graph6: None,
            trace: SolveTrace::default(),
        }))
    }

    pub fn is_contract(&self) -> bool {
        matches!(self, Error::Contract(_))
    }

    /// Attaches graph and trace context to a contract error; other variants pass through.
    pub(crate) fn with_context(self, graph6: &str, trace: &SolveTrace) -> Self {
        match self {
            Error::Contract(mut v) => {
                if v.graph6.is_none() {
                    v.graph6 = Some(graph6.to_owned());
                }
                if v.trace.steps.is_empty() {
                    v.trace = trace.clone();
                }
                Error::Contract(v)
            }
            other => other,
        }
    }
}
