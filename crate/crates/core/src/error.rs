use thiserror::Error;

/// Errors produced by parsing, passage algebra and the optimizers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid vertex name `{0}`")]
    InvalidVertexName(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("edge ({tail},{head}) is not in the graph")]
    EdgeNotInGraph { tail: String, head: String },

    #[error("operands are bound to different graphs")]
    GraphMismatch,

    #[error("edge set is not a passage")]
    NotAPassage,

    #[error("part {index} is empty")]
    EmptyPart { index: usize },

    #[error("part {index} is not a passage")]
    NonPassagePart { index: usize },

    #[error("parts {first} and {second} share edge ({tail},{head})")]
    OverlappingParts {
        first: usize,
        second: usize,
        tail: String,
        head: String,
    },

    #[error("edge ({tail},{head}) is not covered by any part")]
    IncompleteCover { tail: String, head: String },

    #[error("weight `{0}` is outside [-1, 1]")]
    WeightOutOfRange(String),

    #[error("weight `{0}` has more than 6 decimal places")]
    WeightPrecision(String),

    #[error("the partitioning has no parts")]
    EmptyPartitioning,

    #[error("accuracy is undefined: no positive weights and a negative chosen total")]
    DegenerateAccuracy,

    #[error("exact mode supports at most {max} nonzero-weight pairs, instance has {pairs}")]
    InstanceTooLarge { pairs: usize, max: usize },

    #[error("invalid json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
