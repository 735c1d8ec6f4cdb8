//! Reproducible random streams.
//!
//! Every build is driven by one master seed. Each independent piece of work
//! (the sequential pipeline, the background graph, each community graph, each
//! ECG base run) reads from its own ChaCha8 stream `(seed, stream id)`, so the
//! output does not depend on how work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Stream used by the sequential stages of a build.
pub const PIPELINE_STREAM: u64 = 0;
/// Stream used for the background graph.
pub const BACKGROUND_STREAM: u64 = 1;
/// Community graph `j` (0-based) uses stream `COMMUNITY_STREAM_BASE + j`.
pub const COMMUNITY_STREAM_BASE: u64 = 2;
/// Stream for analysis run on a finished graph (clustering, tree roots).
pub const ANALYSIS_STREAM: u64 = u64::MAX;

/// Random stream number `stream` derived from `seed`.
pub fn substream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
