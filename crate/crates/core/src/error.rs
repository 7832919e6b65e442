use alloc::string::String;

/// Failures raised by constructions and searches in this crate.
///
/// Search failures (`SearchExhausted`, `ScanCapExceeded`, `NoSplit`) are
/// budget failures: they never mean the object does not exist.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("point {0} lies in R and cannot parametrize a basis set")]
    PointInR(String),
    #[error("search exhausted at bound {bound}")]
    SearchExhausted { bound: u32 },
    #[error("witness for O_{0} is invalid; the feasible space is misconfigured")]
    InvalidWitness(u32),
    #[error("scan cap {cap} exceeded while locating {point}")]
    ScanCapExceeded { cap: usize, point: String },
    #[error("point {point} is not covered by any piece of {map}")]
    Uncovered { map: String, point: String },
    #[error("no splitting index up to depth {depth}")]
    NoSplit { depth: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("window mismatch: {0} vs {1}")]
    WindowMismatch(u32, u32),
    #[error("depth {depth} outside the supported range {min}..={max}")]
    DepthOutOfRange { depth: u32, min: u32, max: u32 },
    #[error("closure budget {0} exceeded")]
    ClosureBudget(usize),
    #[error("not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("does not normalize the diagonal (defect {0:e})")]
    NotNormalizing(f64),
    #[error("support projections do not sum to the identity")]
    ProjectionsIncomplete,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
