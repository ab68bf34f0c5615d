use thiserror::Error;

use crate::decomposition::TdViolation;
use crate::minors::ModelViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what}: instance size {size} exceeds configured cap {cap}")]
    ResourceLimit {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid tree-decomposition: {0}")]
    Decomposition(#[from] TdViolation),

    #[error("invalid model: {0}")]
    Model(#[from] ModelViolation),

    #[error("invalid separation: {0}")]
    Separation(String),

    /// The separator oracle found nothing for an induced subgraph and a set of
    /// size `q`; `vertices` and `set` are in host labels.
    #[error("no balanced separation of bounded order for set {set:?} in subgraph on {vertices:?}")]
    NoSeparator { vertices: Vec<usize>, set: Vec<usize> },

    #[error("separator oracle broke its contract: {0}")]
    OracleContract(String),

    #[error("ordered graph is not x-free: edges {0:?} and {1:?} cross without a connecting edge")]
    NotXFree((usize, usize), (usize, usize)),

    #[error("structural failure: {0}")]
    Structural(String),

    #[error("vertex-minor step {index} is invalid: {msg}")]
    InvalidStep { index: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Stable machine-readable tag used in CLI JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Parse { .. } => "parse-error",
            Error::ResourceLimit { .. } => "resource-limit",
            Error::Decomposition(_) => "invalid-decomposition",
            Error::Model(_) => "invalid-model",
            Error::Separation(_) => "invalid-separation",
            Error::NoSeparator { .. } => "no-separator",
            Error::OracleContract(_) => "oracle-contract",
            Error::NotXFree(..) => "not-x-free",
            Error::Structural(_) => "structural",
            Error::InvalidStep { .. } => "invalid-step",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Caps for the exponential desk-scale oracles. Exceeding a cap is always an
/// error, never a silent approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub treewidth: usize,
    pub separator: usize,
    pub minor: usize,
    pub hadwiger: usize,
    pub clique_minor: usize,
    pub independent_set: usize,
    pub induced_grid: usize,
    /// Largest `t` accepted by the planar-subgraph extraction.
    pub planar_extraction_t: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            treewidth: 20,
            separator: 16,
            minor: 16,
            hadwiger: 20,
            clique_minor: 128,
            independent_set: 128,
            induced_grid: 12,
            planar_extraction_t: 2,
        }
    }
}

pub(crate) fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::ResourceLimit { what, size, cap })
    } else {
        Ok(())
    }
}
