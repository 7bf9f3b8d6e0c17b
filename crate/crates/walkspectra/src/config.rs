//! Runtime ceilings read from the environment.
//!
//! Both knobs are re-read on every call; they are consulted at entry points
//! only, so the cost is negligible and tests can tighten them locally.

/// Largest deck size any partition-indexed operation accepts.
///
/// Controlled by `WALKSPECTRA_MAX_N`, default 64. Values that fail to parse
/// fall back to the default.
pub fn max_n() -> usize {
    read("WALKSPECTRA_MAX_N", 64)
}

/// Memory budget in MiB for dense group-level computations.
///
/// Controlled by `WALKSPECTRA_MEM_MB`, default 4096.
pub fn mem_limit_mb() -> u64 {
    read("WALKSPECTRA_MEM_MB", 4096)
}

fn read<T: std::str::FromStr + Copy>(var: &str, default: T) -> T {
    match std::env::var(var) {
        Ok(s) => s.trim().parse().unwrap_or(default),
        Err(_) => default,
    }
}

/// Checks an allocation request against [`mem_limit_mb`].
pub(crate) fn check_memory(bytes: u64) -> crate::Result<()> {
    let required_mb = bytes.div_ceil(1024 * 1024);
    let limit_mb = mem_limit_mb();
    if required_mb > limit_mb {
        return Err(crate::Error::MemoryLimit {
            required_mb,
            limit_mb,
        });
    }
    Ok(())
}
