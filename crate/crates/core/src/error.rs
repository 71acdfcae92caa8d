use thiserror::Error;

/// Reasons a system file can be rejected. Each variant is reported together
/// with the (1-based) line number where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `generators:` header")]
    MissingGenerators,
    #[error("expected `matrix:` header")]
    MissingMatrix,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("no generators given")]
    EmptyGenerators,
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid matrix entry `{0}`")]
    BadEntry(String),
    #[error("matrix row has {found} entries, expected {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("matrix has {found} rows, expected {expected}")]
    RowCount { expected: usize, found: usize },
    #[error("diagonal entry ({0},{0}) must be 1")]
    Diagonal(usize),
    #[error("off-diagonal entry ({0},{1}) must be 0 or at least 2")]
    OffDiagonal(usize, usize),
    #[error("matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("unexpected trailing content")]
    Trailing,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },
    #[error("invalid Coxeter matrix: {0}")]
    InvalidSystem(String),
    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("elements belong to different Coxeter systems")]
    MixedSystem,
    #[error("resource cap exceeded: {what} (cap {cap})")]
    ResourceCap { what: &'static str, cap: usize },
    #[error("subset {0} is not spherical")]
    NotSpherical(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("numeric sign test is ambiguous: {0}")]
    Numeric(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by exceeding a configured resource bound.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
