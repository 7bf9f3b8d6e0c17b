use thiserror::Error;

/// Errors surfaced by the public API.
///
/// Domain violations are reported as structured variants so callers (and the
/// CLI) can map them to exit codes without string matching.
#[derive(Debug, Error)]
pub enum Error {
    /// The given part list is not a partition (unsorted, zero part, ...).
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// An irrep label that does not exist (wrong variant for the shape).
    #[error("invalid irrep label: {0}")]
    InvalidLabel(String),

    /// A size argument fell outside the supported or configured range.
    #[error("{what} = {requested} exceeds the supported limit {limit}")]
    SizeLimit {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    /// The operation would allocate more than the configured memory budget.
    #[error("operation needs about {required_mb} MiB, limit is {limit_mb} MiB (WALKSPECTRA_MEM_MB)")]
    MemoryLimit { required_mb: u64, limit_mb: u64 },

    /// A closed form that is only valid above a size threshold.
    #[error("no closed form at n = {n}: {hint}")]
    FormulaUnavailable { n: usize, hint: &'static str },

    /// Any other violated precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
