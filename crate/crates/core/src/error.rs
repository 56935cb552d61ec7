use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range (valid range 0..={max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("the 0-tree has no faces")]
    LeafHasNoFaces,

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a cochain complex: {0}")]
    NonComplex(String),

    #[error("multiplication is not associative at basis triple {0:?}")]
    NotAssociative((usize, usize, usize)),

    #[error("map is not a derivation at basis pair {0:?}")]
    NotDerivation((usize, usize)),

    #[error("differential does not square to zero on basis vector {0}")]
    NotSquareZero(usize),

    #[error("bimodule check failed: {0}")]
    NotBimodule(String),

    #[error("axiom failure: {0}")]
    AxiomFailure(String),

    #[error("invalid oriented group: {0}")]
    InvalidGroup(String),

    #[error("not a degree-1 cocycle: {0}")]
    NotCocycle(String),

    #[error("matrix is not a section of the projection")]
    NotSection,

    #[error("infinitesimal of order {order} requested but coefficient {index} is nonzero")]
    PrecedingTermsNonzero { order: usize, index: usize },

    #[error("certificate failed to verify: {0}")]
    CertificateFailure(String),

    #[error("parse error: {0}")]
    Parse(String),
}
