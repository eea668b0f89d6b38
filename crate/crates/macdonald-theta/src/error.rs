//! Error type shared by every layer of the crate.

use thiserror::Error;

use crate::lattice_weyl::Weight;

/// Everything that can go wrong while building or verifying objects.
///
/// Configuration errors are the caller's fault (bad type/rank, bad twist,
/// bad `t`), capability errors mean the request is well formed but outside
/// what the implementation supports, and consistency failures indicate that
/// an internal cross-check did not hold.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unsupported request: {0}")]
    Capability(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cutoff q^{cutoff} too small: coefficient at weight {weight} did not stabilize")]
    CutoffTooSmall { weight: Weight, cutoff: String },

    #[error("spectral collision at the chosen t: {0}")]
    SpectralCollision(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
