use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid token {token:?}: {reason}")]
    Parse { token: String, reason: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("enumeration bound exceeded: {0}")]
    EnumerationCap(String),

    #[error("decomposition bound exceeded: {0}")]
    DecompositionCap(String),

    #[error("simulation budget exceeded: {cost} units requested, budget is {budget}")]
    Budget { cost: u128, budget: u128 },

    #[error("internal consistency violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by a resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::EnumerationCap(_) | Error::DecompositionCap(_) | Error::Budget { .. }
        )
    }
}
