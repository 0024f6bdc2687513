use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    OutOfRange { vertex: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("capacity exceeded: {what} needs {size} free vertices, cap is {cap}")]
    Capacity {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("graph is disconnected: vertex {unreached} is not reachable from root {root}")]
    Disconnected { root: usize, unreached: usize },

    #[error("undetermined: vertex {vertex} has uncolored neighbor {neighbor}")]
    Undetermined { vertex: usize, neighbor: usize },

    #[error("engine invariant violated: {0}")]
    Engine(String),

    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
