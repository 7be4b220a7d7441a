use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a sublattice: {0}")]
    NotASublattice(String),
    #[error("unsupported root system type {0}")]
    UnsupportedType(String),
    #[error("unsupported lattice family {0}")]
    UnsupportedFamily(String),
    #[error("vector is not a root of the system")]
    NotARoot,
    #[error("group exceeds the element ceiling of {ceiling}")]
    GroupTooLarge { ceiling: usize },
    #[error("diagram has {nodes} nodes, brute-force limit is {limit}")]
    DiagramTooLarge { nodes: usize, limit: usize },
    #[error("centering enumeration needs {work} candidates, ceiling is {ceiling}")]
    BoundTooLarge { work: u128, ceiling: u128 },
    #[error("finite quotient of order {order} exceeds ceiling {ceiling}")]
    QuotientTooLarge { order: u128, ceiling: u128 },
    #[error("inconsistent vector system: {0}")]
    InconsistentVectorSystem(String),
    #[error("elements belong to different groups")]
    MixedParents,
    #[error("point-group element is not an involution")]
    NotAnInvolution,
    #[error("lattice is not invariant: {0}")]
    NotInvariant(String),
    #[error("unknown catalog entry {0}")]
    UnknownCatalogEntry(String),
    #[error("groups belong to different families")]
    FamilyMismatch,
    #[error("unsupported format {0}")]
    UnsupportedFormat(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("catalog error: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
