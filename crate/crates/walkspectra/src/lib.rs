//! Spectra, mixing-time bounds, and brute-force oracles for three shuffle
//! walks on the alternating group A_n, plus the associated Cayley-style
//! graph.
//!
//! The crate is organised bottom-up:
//!
//! - [`combinatorics`]: partitions, hook-length dimensions, corner data,
//!   standard tableaux.
//! - [`characters`]: exact symmetric-group characters and the normalized
//!   three-cycle character ratio.
//! - [`spectra`]: closed-form eigenvalue data per irreducible constituent
//!   and aggregated over the regular representation.
//! - [`group_oracle`]: dense computations over small A_n that validate the
//!   closed forms independently.
//! - [`analysis`]: mixing schedules, total-variation bounds, limit-profile
//!   curves, and the walk-comparison sums.
//! - [`simulator`]: deterministic Monte Carlo experiments on decks.
//!
//! All randomness is counter-based and seed-addressed, so every public
//! operation is reproducible bit for bit across platforms.

pub mod analysis;
pub mod characters;
pub mod combinatorics;
pub mod config;
mod error;
pub mod group_oracle;
mod perm;
pub mod simulator;
pub mod spectra;
mod walks;

pub use error::Error;
pub use perm::Perm;
pub use walks::Walk;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
