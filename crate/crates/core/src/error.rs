use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A named side condition of a bound or construction does not hold.
    #[error("{0}")]
    Hypothesis(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        limit: usize,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("graph is complete bipartite; no nontrivial independent set exists")]
    CompleteGraph,
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("vertex set is not a fragment")]
    NotAFragment,
    #[error("vertex sets live on different sides or parts")]
    SideMismatch,
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("orbit exceeded cap of {0} sets")]
    CapExceeded(usize),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("set does not contain the identity permutation")]
    MissingIdentity,
    #[error("part is not regular")]
    NotRegular,
    #[error("grid has no tuples")]
    EmptyGrid,
}

impl Error {
    pub(crate) fn hypothesis(name: &str) -> Self {
        Error::Hypothesis(name.to_string())
    }

    pub(crate) fn budget(what: &'static str, needed: impl ToString, limit: usize) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            limit,
        }
    }
}
