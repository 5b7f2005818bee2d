use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("formula mixes the plain box with [i]/[m]")]
    MixedTags,

    #[error("unknown axiom name `{0}`")]
    UnknownAxiom(String),

    #[error("unknown logic name `{0}`")]
    UnknownLogic(String),

    #[error("no relational condition is available for `{0}`")]
    UnsupportedCondition(String),

    #[error("no frame class is available for `{0}`")]
    UnsupportedLogic(String),

    #[error("relation is not a partial order: {0}")]
    NotPoset(String),

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("variable `{0}` occurs free where it must not")]
    VariableOccurs(String),

    #[error("variable `{0}` is not box-guarded")]
    NotGuarded(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("line {line}: {message}")]
    BadFile { line: usize, message: String },

    #[error("density check requires {0}")]
    DensityPrecondition(String),

    #[error("unresolved constant `{0}`")]
    UnresolvedConstant(String),

    #[error("type error: {0}")]
    TypeError(String),

    #[error("functoriality violated: {0}")]
    Functoriality(String),

    #[error("naturality violated: {0}")]
    Naturality(String),

    #[error("underlying poset is not a chain")]
    NotAChain,

    #[error("endomorphism is not later-contractive")]
    NotContractive,

    #[error("stage {0} is empty; object is not inhabited")]
    EmptyStage(usize),
}

impl Error {
    /// True for errors caused by the configurable search/size limits rather
    /// than by malformed input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_) | Error::BudgetExhausted(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
