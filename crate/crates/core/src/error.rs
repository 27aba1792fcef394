use thiserror::Error;

use crate::sps::AxiomReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("not a lattice: elements {a} and {b} have no {missing}")]
    NotALattice {
        a: String,
        b: String,
        missing: &'static str,
    },

    #[error("size cap exceeded: {size} elements (cap {cap}; override with SPSLAB_SIZE_CAP)")]
    SizeCapExceeded { size: usize, cap: usize },

    #[error("invalid orthocomplementation: {0}")]
    InvalidOrtho(String),

    #[error("unknown property: {0}")]
    UnknownProperty(String),

    #[error("unknown state: {0}")]
    UnknownState(String),

    #[error("generator {index} contains states outside the ground set")]
    GeneratorOutOfGround { index: usize },

    #[error("subset is not open")]
    NotOpen,

    #[error("property {0} is not topological")]
    NotTopological(String),

    #[error("invalid test: {0}")]
    InvalidTestSpec(String),

    #[error("sample is empty")]
    EmptySample,

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("classical states do not partition the state space: {0}")]
    PartitionFailure(String),

    #[error("too many states: {0} (at most {max})", max = crate::stateset::MAX_STATES)]
    TooManyStates(usize),

    #[error("not a closure system: {0}")]
    NotAClosureSystem(String),

    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("state property system axioms violated: {0}")]
    AxiomViolation(Box<AxiomReport>),

    /// An identity that holds in theory failed on a concrete instance.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid document: {0}")]
    Document(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
