use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("basis exchange axiom violated")]
    ExchangeAxiomViolated,
    #[error("bases do not all have the same cardinality")]
    UnequalBasisSizes,
    #[error("element index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("rank {r} out of range for ground set of size {n}")]
    RankOutOfRange { r: usize, n: usize },
    #[error("subset references elements outside the ground set")]
    SubsetOutOfRange,
    #[error("ground set size {n} exceeds the hard cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("ground set of size {n} is too small for this operation (need at least {need})")]
    GroundSetTooSmall { n: usize, need: usize },
    #[error("matroids have different ground set sizes ({left} vs {right})")]
    GroundSetMismatch { left: usize, right: usize },
    #[error("set is not both a circuit and a hyperplane")]
    NotCircuitHyperplane,
    #[error("matroid is not simple (has a loop or a parallel pair)")]
    NotSimple,
    #[error("matroid has a loop")]
    HasLoop,
    #[error("rank regime r(M) + r(N) != |E| + 1 is not supported by the oracle")]
    RankRegimeUnsupported,
    #[error("generic shift degenerated {retries} times in a row; giving up")]
    DegeneracyRetriesExhausted { retries: u32 },
    #[error("generators do not span a full-rank lattice")]
    NotFullRank,
    #[error("gain graph has the wrong gain group for this operation")]
    WrongGroup,
    #[error("edge {edge} not found in gain graph")]
    EdgeNotFound { edge: usize },
    #[error("printed gain-level contraction rule disagrees with matroid-level contraction")]
    GainRuleMismatch,
    #[error("input is not minimally rigid for the requested symmetry class")]
    NotMinimallyRigid,
    #[error("self flip product is odd; realisation count would not be an integer")]
    OddSelfProduct,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
