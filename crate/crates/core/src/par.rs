//! Parallel map behind the `--jobs` setting. Serial unless jobs > 1.

use rayon::prelude::*;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

static JOBS: AtomicUsize = AtomicUsize::new(1);
static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();

/// Number of worker threads for enumerations; the first value above 1 fixes the pool size.
pub fn set_jobs(n: usize) {
    JOBS.store(n.max(1), Ordering::Relaxed);
}

pub fn jobs() -> usize {
    JOBS.load(Ordering::Relaxed)
}

pub(crate) fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    let n = jobs();
    if n <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let pool = POOL.get_or_init(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
    });
    pool.install(|| items.par_iter().map(f).collect())
}
