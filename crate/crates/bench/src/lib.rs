//! Seeded inputs shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stabilizer_core::bench::random_state;
use stabilizer_core::StabilizerMatrix;

/// Qubit counts swept by the benchmarks.
pub const SIZES: [usize; 5] = [16, 32, 64, 128, 256];

/// Gate-count coefficient for the random states.
pub const BETA: f64 = 1.2;

/// Two independent random states on `n` qubits, reproducible from `seed`.
pub fn state_pair(n: usize, seed: u64) -> (StabilizerMatrix, StabilizerMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).rotate_left(32));
    let a = random_state(n, BETA, &mut rng);
    let b = random_state(n, BETA, &mut rng);
    (a, b)
}
