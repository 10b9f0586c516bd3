use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("instance has no charts")]
    EmptyInstance,
    #[error("denominator must be at least 1")]
    ZeroDenominator,
    #[error("chart {chart}: height {value} is outside (0, 1]")]
    HeightOutOfRange { chart: usize, value: String },
    #[error("chart {chart}: height {value} is not a multiple of 1/{denominator}")]
    NonRepresentable {
        chart: usize,
        value: String,
        denominator: u64,
    },
    #[error("chart {0} has no start cell")]
    UnassignedChart(usize),
    #[error("packing has {got} start cells, instance has {expected} charts")]
    PackingSizeMismatch { expected: usize, got: usize },
    #[error("start cell must be at least 1 (chart {0})")]
    InvalidStart(usize),
    #[error("packing is infeasible: cell {cell} holds {load}/{denominator}")]
    InfeasiblePacking {
        cell: usize,
        load: u64,
        denominator: u64,
    },
    #[error("overlap of {t} cells is not possible between charts of length {left} and {right}")]
    OverlapTooLarge { t: usize, left: usize, right: usize },
    #[error("merge with overlap {0} exceeds unit cell capacity")]
    InfeasibleMerge(usize),
    #[error("graph edge ({0}, {1}) is a self-loop or out of range")]
    InvalidEdge(usize, usize),
    #[error("graph has a duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("brute-force matching refuses {0} edges (limit 24)")]
    TooLarge(usize),
    #[error("pairs do not form a matching in the round-1 union graph: {0}")]
    NotAMatching(String),
    #[error("supplied matching has weight {got}, the maximum is {max}")]
    NotMaxWeight { got: u64, max: u64 },
    #[error("order is not a permutation of the chart ids")]
    NotAPermutation,
    #[error("chart provenance does not cover every id exactly once")]
    ProvenanceGap,
    #[error("jmax must be at least 2 (got {0})")]
    JmaxTooSmall(usize),
    #[error("chart {0} is not big")]
    NotBigInstance(usize),
    #[error("instance size must be at least 1")]
    SizeTooSmall,
    #[error("family parameter k must be at least 1")]
    KTooSmall,
    #[error("denominator {0} is not divisible by 100")]
    DenominatorNotHundredths(u64),
    #[error("unsupported file version {0}")]
    UnsupportedVersion(u32),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
