//! Worker-pool sizing shared by the subcommands that parallelize over
//! episodes or scenes. Work is always collected in a deterministic order,
//! so the pool size never changes any output.

use anyhow::Context;

pub fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> anyhow::Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => anyhow::bail!("--jobs must be at least 1"),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .context("building the worker pool")?;
            Ok(pool.install(f))
        }
    }
}
