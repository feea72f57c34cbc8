//! Counter-based random streams. The ChaCha key is derived from the master
//! seed and the stream role, the ChaCha stream id from the trajectory index,
//! so every `(master, trajectory, role)` triple owns a distinct keystream
//! and no draw depends on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Wiener increments of the measurement record.
pub const NOISE_STREAM: u32 = 0;
/// Error-jump times and channels.
pub const JUMP_STREAM: u32 = 1;

/// Bits reserved for the trajectory counter inside a sweep point.
const TRAJ_BITS: u32 = 40;

pub fn derive_seed(master_seed: u64, trajectory_index: u64, stream_id: u32) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&master_seed.to_le_bytes());
    key[8..12].copy_from_slice(&stream_id.to_le_bytes());
    // fixed tag so keys never coincide with a user-chosen raw ChaCha seed
    key[24..].copy_from_slice(b"cqec-rng");
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trajectory_index);
    rng
}

/// Global trajectory index of trajectory `i` at sweep point `point`.
pub fn trajectory_index(point: usize, i: u64) -> u64 {
    debug_assert!(i < 1 << TRAJ_BITS);
    ((point as u64) << TRAJ_BITS) | i
}
