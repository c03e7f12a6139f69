use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid vertex name `{0}`")]
    InvalidName(String),

    #[error("self-loop on vertex `{0}`")]
    Loop(String),

    #[error("vertex name `{0}` appears in more than one graph of the join")]
    VertexNameCollision(String),

    #[error("graph is not very well-covered")]
    NotVeryWellCovered,

    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),

    #[error("budget `{budget}` exceeded: limit {limit}, needed {needed}")]
    BudgetExceeded {
        budget: &'static str,
        limit: usize,
        needed: usize,
    },

    #[error("ideals live in different rings")]
    RingMismatch,

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("zero ideal has no regularity")]
    ZeroIdeal,

    #[error("unit ideal has no regularity")]
    UnitIdeal,

    #[error("`{0}` is not an edge of the base graph")]
    NotAnEdge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn budget(budget: &'static str, limit: usize, needed: usize) -> Self {
        Error::BudgetExceeded {
            budget,
            limit,
            needed,
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
