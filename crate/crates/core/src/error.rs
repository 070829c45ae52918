use thiserror::Error;

/// Errors raised by the prymlab engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("unsupported rank {rank} (limit {limit})")]
    UnsupportedRank { rank: usize, limit: usize },

    #[error("monodromy relation violated: product is {product}")]
    RelationViolated { product: String },

    #[error("cover is disconnected ({count} components: {components})")]
    Disconnected { count: usize, components: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("fiber matrix is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("degenerate form: radical of rank {radical_rank}")]
    Degenerate { radical_rank: usize },

    #[error("odd lattice rank {0} cannot carry a nondegenerate alternating form")]
    OddRank(usize),

    #[error("vector is not in the lattice")]
    NotInLattice,

    #[error("random generation failed after {0} rejections")]
    GenerationFailure(u64),

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("constraint violated: {0}")]
    Constraint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
