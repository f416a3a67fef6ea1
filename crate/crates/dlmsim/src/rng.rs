//! Seedable random-number source behind every stochastic decision.
//!
//! The generator is fixed to ChaCha12 (`rand_chacha`), keyed through
//! `seed_from_u64` with the ChaCha stream counter selecting independent
//! substreams. Identical (seed, stream) pairs yield byte-identical output
//! on every platform; distinct streams of one seed are uncorrelated.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::real::Real;

#[derive(Clone, Debug)]
pub struct RandomSource {
    rng: ChaCha12Rng,
}

impl RandomSource {
    /// Stream 0 of the given seed.
    pub fn seeded(seed: u64) -> Self {
        RandomSource::stream(seed, 0)
    }

    /// An independent substream of the given seed.
    pub fn stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomSource { rng }
    }

    /// Uniform deviate in [0, 1); advances the generator state.
    pub fn uniform<T: Real>(&mut self) -> T {
        T::uniform(&mut self.rng)
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
}

/// splitmix64 finalizer; stable bit-mixing for stream derivation.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream id for a sweep grid point, a function of the point's angle bits
/// only — never of its position in the grid.
pub fn point_stream(alpha_bits: u64, phi_bits: u64) -> u64 {
    mix64(alpha_bits ^ mix64(phi_bits))
}
