//! Deterministic parallel random-number plumbing.
//!
//! Every randomized operation takes a 64-bit seed. Work is carved into
//! fixed-size chunks; chunk `c` draws from ChaCha12 stream `c` of the seeded
//! key, and chunk outputs are recombined in index order. The result is
//! bit-identical for a given (seed, count) regardless of thread count or
//! scheduling. `HITLOC_THREADS` caps the worker pool.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use std::sync::OnceLock;

/// Draws per deterministic chunk.
pub(crate) const CHUNK: usize = 1 << 14;

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn thread_pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("HITLOC_THREADS")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            builder = builder.num_threads(n);
        }
        builder.build().expect("failed to build worker pool")
    })
}

/// Applies `job(chunk_rng, start, len)` over `count` items in deterministic
/// chunks; the returned vector is in chunk order.
pub(crate) fn run_chunked<T, F>(count: usize, seed: u64, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha12Rng, usize, usize) -> T + Sync,
{
    let n_chunks = count.div_ceil(CHUNK);
    thread_pool().install(|| {
        (0..n_chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * CHUNK;
                let len = CHUNK.min(count - start);
                let mut rng = stream_rng(seed, c as u64);
                job(&mut rng, start, len)
            })
            .collect()
    })
}

/// Derives an unrelated seed for an auxiliary batch (second convolution
/// operand, bridge noise, ...). SplitMix64 finalizer.
pub(crate) fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
