//! Hierarchical seed derivation: each unit of work (grouping, duplicate set,
//! permutation, seat) gets a seed computed from its parent seed and a label,
//! never from a shared sequential stream.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Child seed of `parent` under `label`.
pub fn derive_seed(parent: u64, label: &str) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(parent.to_le_bytes());
    hasher.update(label.as_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positions `rng` at the start of the stream reserved for hand `hand`.
pub fn enter_hand(rng: &mut ChaCha8Rng, hand: usize) {
    rng.set_stream(hand as u64);
    rng.set_word_pos(0);
}
