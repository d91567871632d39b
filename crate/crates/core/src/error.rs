use alloc::vec::Vec;

/// Errors raised by the decomposition pipeline.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("pauli axis {0} out of range 0..=3")]
    AxisOutOfRange(u8),
    #[error("pauli string index {index} out of range for {n} sites")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("tensor product of an empty factor list")]
    EmptyProduct,
    #[error("half-system size d = {d} outside 1..={max}")]
    HalfSizeOutOfRange { d: usize, max: usize },
    #[error("site {site} outside 1..={max}")]
    SiteOutOfRange { site: usize, max: usize },
    #[error("term {term} is the all-identity string")]
    IdentityTermPresent { term: usize },
    #[error("term {term} acts on {found} sites, expected {expected}")]
    InconsistentArity {
        term: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid schedule: {0}")]
    InvalidSchedule(&'static str),
    #[error("term {term} has duration {found}, expected {expected}")]
    DurationMismatch {
        term: usize,
        expected: f64,
        found: f64,
    },
    #[error("time {t} outside schedule range [0, {duration}]")]
    TimeOutOfRange { t: f64, duration: f64 },
    #[error("operation needs an even number of sites, got {0}")]
    OddArity(usize),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NonHermitian(f64),
    #[error("matrix has odd dimension {0}")]
    OddDimension(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} rotation pairs, got {found}")]
    CoefficientMismatch { expected: usize, found: usize },
    #[error("rotation coefficients not normalized: |A|^2 + |B|^2 = {0}")]
    NotNormalized(f64),
    #[error("invalid pairing: {0}")]
    InvalidPairing(&'static str),
    #[error("coupled component with more than two states: {component:?}")]
    BlockStructureViolation { component: Vec<usize> },
    #[error("coupling ({row}, {col}) of magnitude {magnitude:e} crosses the requested pairing")]
    OffBlockCoupling {
        row: usize,
        col: usize,
        magnitude: f64,
    },
    #[error(
        "segment {segment} couples states {component:?} across the pairing of earlier segments"
    )]
    PairingDrift {
        segment: usize,
        component: Vec<usize>,
    },
    #[error("empty block schedule")]
    EmptySchedule,
}
