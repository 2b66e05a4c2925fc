//! Deterministic derivation of per-consumer seeds from one run seed.

use sha2::{Digest, Sha256};

/// Derives an independent seed for the consumer named `label`. Adding a new
/// label never changes the seeds of existing ones.
pub fn fork(seed: u64, label: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(label.as_bytes());
    let digest = hasher.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}
