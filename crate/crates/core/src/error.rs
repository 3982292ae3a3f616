use thiserror::Error;

/// Errors shared by all models and checkers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("hom-set preorder required but absent")]
    MissingPreorder,
    #[error("missing functor structure: {0}")]
    MissingStructure(&'static str),
    #[error("object not present in the fixture: {0}")]
    MissingObject(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map is not monotone")]
    NotMonotone,
    #[error("row sum violation: {0}")]
    RowSumViolation(String),
    #[error("interface mismatch: {0}")]
    InterfaceMismatch(String),
    #[error("sort mismatch: {0}")]
    SortMismatch(String),
    #[error("type mismatch in assignment: {0}")]
    TypeMismatch(String),
    #[error("not a gs-monoidal monad: {0}")]
    NotGsMonoidalMonad(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
