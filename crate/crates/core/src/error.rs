use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the algebra, group and classification layers.
///
/// The variants map onto the CLI exit-code contract: `InvalidInput`,
/// `Reducible`, `NotSubgroup`, `UnknownAxiom` and `UnknownField` are input
/// errors (exit 2), `ResourceCap` is exit 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polynomial is reducible over the field: {factors}")]
    Reducible { factors: String },

    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap {
        what: String,
        limit: u64,
        /// Absolute degree reached before the cap tripped, when a tower was
        /// being built.
        partial_degree: Option<u64>,
    },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("unknown axiom id `{0}`")]
    UnknownAxiom(String),

    #[error("unknown base field `{0}`")]
    UnknownField(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn cap(what: impl Into<String>, limit: u64) -> Self {
        Error::ResourceCap {
            what: what.into(),
            limit,
            partial_degree: None,
        }
    }

    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}
