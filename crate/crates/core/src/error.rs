use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{0}` has non-positive length")]
    NonPositiveLength(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("offset {offset} is not interior to edge `{edge}`")]
    InvalidOffset { edge: String, offset: String },
    #[error("point {0} is not a vertex of the model")]
    PointNotOnGrid(String),
    #[error("operation requires a connected graph")]
    DisconnectedInput,
    #[error("model edges do not all have the same length")]
    NonUniformModel,
    #[error("model contains a self-loop at `{0}`")]
    SelfLoopInModel(String),
    #[error("function has a non-integral slope on edge `{0}`")]
    NonIntegralSlope(String),
    #[error("function is not linear on model edge `{0}`")]
    BendOffModel(String),
    #[error("function value missing at vertex `{0}`")]
    MissingValue(String),
    #[error("firing distance {0} is too large for the subgraph")]
    InvalidFiringDistance(String),
    #[error("divisor is negative at `{0}`")]
    NotEffectiveAway(String),
    #[error("divisor is not effective")]
    NotEffective,
    #[error("divisor is not generic")]
    NotGeneric,
    #[error("divisor is not in the canonical linear system")]
    NotInCanonicalSystem,
    #[error("divisors lie in different linear systems")]
    NotEquivalent,
    #[error("{what} budget of {cap} exceeded")]
    BudgetExceeded { what: &'static str, cap: usize },
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateId(_) => "DuplicateId",
            Error::NonPositiveLength(_) => "NonPositiveLength",
            Error::DanglingEndpoint { .. } => "DanglingEndpoint",
            Error::EmptyGraph => "EmptyGraph",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownEdge(_) => "UnknownEdge",
            Error::InvalidOffset { .. } => "InvalidOffset",
            Error::PointNotOnGrid(_) => "PointNotOnGrid",
            Error::DisconnectedInput => "DisconnectedInput",
            Error::NonUniformModel => "NonUniformModel",
            Error::SelfLoopInModel(_) => "SelfLoopInModel",
            Error::NonIntegralSlope(_) => "NonIntegralSlope",
            Error::BendOffModel(_) => "BendOffModel",
            Error::MissingValue(_) => "MissingValue",
            Error::InvalidFiringDistance(_) => "InvalidFiringDistance",
            Error::NotEffectiveAway(_) => "NotEffectiveAway",
            Error::NotEffective => "NotEffective",
            Error::NotGeneric => "NotGeneric",
            Error::NotInCanonicalSystem => "NotInCanonicalSystem",
            Error::NotEquivalent => "NotEquivalent",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InvalidRational(_) => "InvalidRational",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
