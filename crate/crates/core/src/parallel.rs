//! Seeded fan-out over sample indices.
//!
//! Sample `i` always draws from the ChaCha stream `i` of the run seed, so
//! results do not depend on the number of worker threads. The pool size
//! can be capped with the `ELLIQUOT_THREADS` environment variable.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const THREADS_ENV: &str = "ELLIQUOT_THREADS";

pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// `(0..count).map(|i| f(&mut sample_rng(seed, i)))`, in parallel, results in index order.
pub fn map_indexed<T, F>(count: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync + Send,
{
    let run = || {
        (0..count)
            .into_par_iter()
            .map(|i| f(&mut sample_rng(seed, i)))
            .collect()
    };
    match std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        _ => run(),
    }
}
