use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("state vector has (numerically) zero norm")]
    ZeroVector,
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not idempotent (max deviation {0:e})")]
    NotIdempotent(f64),
    #[error("non-finite value in input")]
    NonFinite,
    #[error("operation requires a rank-1 projector, got rank {0}")]
    RankUnsupported(usize),
    #[error("zero pivot at iteration {0}")]
    ZeroPivot(usize),
    #[error("elimination already finished ({0} iterations)")]
    EliminationComplete(usize),
    #[error("proposition operator must be nonzero")]
    ZeroProjector,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid proposition family: {0}")]
    InvalidFamily(String),
    #[error("degenerate scaling series: {0}")]
    DegenerateSeries(String),
    #[error("machine needs at least one processor")]
    NoProcessors,
    #[error("processor index {index} out of range for {count} processors")]
    ProcessorIndex { index: usize, count: usize },
    #[error("oracle already queried {0} times; machine is complete")]
    MachineComplete(usize),
    #[error("machine not finalized: {done} of {needed} oracle queries done")]
    NotFinalized { done: usize, needed: usize },
    #[error("state is not normalized (norm² = {0})")]
    Unnormalized(f64),
    #[error("shot count must be at least 1")]
    NoShots,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no processor count up to {0} satisfies the requested size and power")]
    Infeasible(u64),
}
