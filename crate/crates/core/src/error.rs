use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a space needs at least one variable")]
    NoVariables,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` has an empty domain")]
    EmptyDomain(String),
    #[error("duplicate value `{value}` in the domain of `{variable}`")]
    DuplicateValue { variable: String, value: String },
    #[error("space too large: {worlds} worlds exceed the cap of {cap}")]
    SpaceTooLarge { worlds: u128, cap: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown value `{value}` for variable `{variable}`")]
    UnknownValue { variable: String, value: String },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("arguments belong to different possibility spaces")]
    SpaceMismatch,
    #[error("proposition is not contingent (it is empty or the whole space)")]
    NotContingent,
    #[error("proposition is empty")]
    EmptyProposition,
    #[error("atoms do not partition the space: {0}")]
    InvalidPartition(String),
    #[error("expected {expected} ranks, got {actual}")]
    RankCount { expected: usize, actual: usize },
    #[error("ranks are not normalized: minimum rank is {0}, expected 0")]
    NotNormalized(u32),
    #[error("world ranks are not constant on the atoms of the measurability field")]
    NotMeasurable,
    #[error("subtraction {0} is undefined on extended naturals")]
    RankArithmetic(String),
    #[error("variable sets are not pairwise disjoint")]
    OverlappingVariables,
    #[error("revision step {index} failed: {source}")]
    RevisionStep { index: usize, source: Box<Error> },
    #[error("search bound exceeds the cap: {0}")]
    BoundTooLarge(String),
    #[error("invalid weight coefficient: {0}")]
    InvalidCoefficient(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid scale map: {0}")]
    InvalidScale(String),
    #[error("invalid mass function: {0}")]
    InvalidMass(String),
    #[error("conditioning proposition is maximally doubted")]
    MaximalDoubt,
    #[error("total conflict: the mass functions cannot be combined")]
    TotalConflict,
    #[error("support degree must lie strictly between 0 and 1")]
    SupportOutOfRange,
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
