use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a model needs at least one facet")]
    EmptyComplex,
    #[error("the agent roster is empty")]
    EmptyRoster,
    #[error("agent `{0}` is listed twice in the roster")]
    DuplicateAgent(String),
    #[error("at most {max} agents are supported, got {got}")]
    TooManyAgents { got: usize, max: usize },
    #[error("`{0}` is not a valid identifier")]
    InvalidIdentifier(String),
    #[error("unknown agent `{agent}` ({context})")]
    UnknownAgent { agent: String, context: String },
    #[error("vertex id `{0}` is declared twice")]
    DuplicateVertex(String),
    #[error("facet {facet:?} has two vertices colored `{agent}`")]
    ChromaViolation { facet: Vec<String>, agent: String },
    #[error("vertex `{vertex}` is colored `{color}` but is labeled with `{prop}`")]
    ForeignProposition {
        vertex: String,
        color: String,
        prop: String,
    },
    #[error("dangling vertex reference `{0}`")]
    DanglingVertexRef(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("{0:?} is not a face of the model")]
    UnknownFace(Vec<String>),
    #[error("the requested subcomplex is empty")]
    EmptyResult,

    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("empty agent group at {0}")]
    EmptyGroup(usize),
    #[error("commitment formula of `{0}` must not contain action modalities")]
    DynamicCommitment(String),

    #[error("unresolved action reference `{0}`")]
    UnresolvedActionRef(String),
    #[error("agent rosters differ: {left:?} vs {right:?}")]
    RosterMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("named simplex `{name}` is not a face of update model `{model}`")]
    UnknownSimplex { model: String, name: String },
    #[error("composed vertex id `{0}` is ambiguous")]
    CompositionClash(String),

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("enumeration would visit about {estimate} candidate complexes (ceiling {ceiling})")]
    BoundsTooLarge { estimate: u128, ceiling: u128 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
