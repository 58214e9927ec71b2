use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex `{0}` is symplectic but has odd dimension {1}")]
    OddSymplecticDim(String, usize),
    #[error("paired vertices `{0}` and `{1}` have different dimensions ({2} vs {3})")]
    UnbalancedPair(String, String, usize, usize),
    #[error("no dimension given for vertex `{0}`")]
    MissingVertex(String),
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("group element block at `{0}` fails its defining identity")]
    NotInGroup(String),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("pfaffian of a matrix of odd size {0}")]
    OddSize(usize),
    #[error("Cayley transform stayed singular after {0} attempts")]
    DegenerateCayley(usize),
    #[error("word is not composable: {0}")]
    NotComposable(String),
    #[error("monomial space of size {size} exceeds the guard rail {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("bad weight profile: {0}")]
    BadWeights(String),
    #[error("invalid decomposition: {0}")]
    InvalidSpec(String),
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
