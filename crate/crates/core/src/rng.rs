//! Named, independent random streams.
//!
//! Every stream is a ChaCha8 generator keyed by the run seed; the 64-bit
//! ChaCha stream id selects the `(point, purpose)` pair. Streams therefore
//! never overlap, and any scan point can be recomputed in isolation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a stream is used for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Stream {
    /// Detector register initialization.
    Init = 0,
    /// Source phases, redrawn per block.
    Phases = 1,
    /// Which detector each messenger travels to.
    Routing = 2,
    /// Output-stage thresholds.
    Thresholds = 3,
    /// Click delays.
    Delays = 4,
    /// Pair frequencies for down-converted sources.
    Spectrum = 5,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn key(seed: u64) -> [u8; 32] {
    let mut state = seed;
    let mut out = [0u8; 32];
    for chunk in out.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    out
}

/// Stream `stream` of scan point `point` under `seed`.
///
/// Point indices up to 2^56 are supported.
pub fn stream(seed: u64, point: u64, stream: Stream) -> ChaCha8Rng {
    debug_assert!(point < (1 << 56));
    let mut rng = ChaCha8Rng::from_seed(key(seed));
    rng.set_stream((point << 8) | stream as u64);
    rng
}

/// All streams for one scan point.
#[derive(Clone, Debug)]
pub struct PointStreams {
    pub phases: ChaCha8Rng,
    pub routing: ChaCha8Rng,
    pub thresholds: ChaCha8Rng,
    pub delays: ChaCha8Rng,
    pub spectrum: ChaCha8Rng,
}

impl PointStreams {
    pub fn new(seed: u64, point: u64) -> Self {
        PointStreams {
            phases: stream(seed, point, Stream::Phases),
            routing: stream(seed, point, Stream::Routing),
            thresholds: stream(seed, point, Stream::Thresholds),
            delays: stream(seed, point, Stream::Delays),
            spectrum: stream(seed, point, Stream::Spectrum),
        }
    }
}
