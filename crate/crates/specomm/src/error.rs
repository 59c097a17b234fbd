use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped into data errors (bad input files, invalid
/// configuration, mismatched vertex sets) and algorithm errors
/// (solver breakdown, size limits); [`Error::is_data_error`] tells the
/// CLI which exit code to use.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("edge ({0}, {1}) not present")]
    MissingEdge(String, String),

    #[error("vertex `{vertex}` assigned to group `{first}` and again to `{second}`")]
    ConflictingAssignment {
        vertex: String,
        first: String,
        second: String,
    },

    #[error("vertex `{0}` missing from the partition file")]
    UnassignedVertex(String),

    #[error("empty vertex selection")]
    EmptySelection,

    #[error("empty group in partition")]
    EmptyGroup,

    #[error("groups overlap on vertex `{0}`")]
    OverlappingGroups(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph has no edges")]
    EdgelessGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("cannot bisect a graph with fewer than two vertices")]
    TooSmallToBisect,

    #[error("requested {k} communities but the graph has only {n} vertices")]
    TargetExceedsVertices { k: usize, n: usize },

    #[error("partition does not cover the same vertex set as the graph")]
    UniverseMismatch,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("eigensolver did not converge within {iterations} iterations (last residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("dense oracle supports at most {max} vertices, got {n}")]
    OracleTooLarge { n: usize, max: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by input data or configuration, as opposed
    /// to algorithm failures.
    pub fn is_data_error(&self) -> bool {
        !matches!(
            self,
            Error::NoConvergence { .. }
                | Error::Disconnected
                | Error::TooSmallToBisect
                | Error::OracleTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
