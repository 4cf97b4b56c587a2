use thiserror::Error;

/// Errors raised by the construction and reduction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("window not certified: requested {requested}, certified {certified}")]
    WindowNotCertified { requested: String, certified: String },

    #[error("coefficient mismatch: {0} vs {1}")]
    CoefficientMismatch(String, String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("non-finite piece: {0}")]
    NonFinite(String),

    #[error("insufficient simplicial levels: need {needed}, have {available}")]
    InsufficientLevels { needed: usize, available: usize },

    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),

    #[error("space must be pointed: {0}")]
    Unpointed(String),

    #[error("parity violation: {0}")]
    ParityViolation(String),

    #[error("axiom violation: {0}")]
    AxiomViolation(String),

    #[error("algebra has no augmentation")]
    MissingAugmentation,

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("algebra is not commutative")]
    NonCommutative,

    #[error("cover is not closed under intersection: {0}")]
    NonClosedCover(String),

    #[error("arc too long for a well-defined orientation: {0}")]
    OverlongArc(String),

    #[error("module has no distinguished element: {0}")]
    UnpointedModule(String),

    #[error("infeasible: estimated block dimension {estimate} exceeds cap {cap}")]
    Infeasible { estimate: usize, cap: usize },

    #[error("denominator {0} is not invertible modulo {1}")]
    NotInvertible(String, u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
