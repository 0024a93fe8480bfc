//! Runtime configuration: command-line flags override the `SIDONLAB_CACHE`
//! and `SIDONLAB_THREADS` environment variables, which override defaults.

use std::path::PathBuf;

use sidonlab_core::constructions::cache::{SingerCache, CACHE_ENV, DEFAULT_CACHE_DIR};

use crate::error::{HarnessError, Result};

pub const THREADS_ENV: &str = "SIDONLAB_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub cache_dir: PathBuf,
    /// Worker count; 0 lets rayon pick the number of available cores.
    pub threads: usize,
}

impl Config {
    /// Resolves the configuration from flags and an environment lookup.
    pub fn resolve(
        cache_flag: Option<PathBuf>,
        threads_flag: Option<usize>,
        env: impl Fn(&str) -> Option<String>,
    ) -> Result<Self> {
        let cache_dir = cache_flag
            .or_else(|| env(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        let threads = match threads_flag {
            Some(t) => t,
            None => match env(THREADS_ENV).filter(|v| !v.is_empty()) {
                Some(v) => v.trim().parse().map_err(|_| {
                    HarnessError::Usage(format!("{THREADS_ENV}={v:?} is not a thread count"))
                })?,
                None => 0,
            },
        };
        Ok(Config { cache_dir, threads })
    }

    pub fn from_process(cache_flag: Option<PathBuf>, threads_flag: Option<usize>) -> Result<Self> {
        Self::resolve(cache_flag, threads_flag, |k| std::env::var(k).ok())
    }

    pub fn cache(&self) -> SingerCache {
        SingerCache::new(&self.cache_dir)
    }

    pub fn thread_pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| HarnessError::Failure(format!("cannot start worker pool: {e}")))
    }
}
