//! On-disk cache of Singer sets, one JSON file per prime.
//!
//! The directory comes from `SIDONLAB_CACHE` (default `.sidonlab-cache`).
//! Every hit is re-verified against the perfect-difference property; a file
//! that fails is reported as [`Error::CacheCorrupt`] and never trusted.

use std::fs;
use std::path::{Path, PathBuf};

use super::{singer_with_limits, Limits, PerfectDifferenceSet};
use crate::{Error, Result};

pub const CACHE_ENV: &str = "SIDONLAB_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".sidonlab-cache";

#[derive(Debug, Clone)]
pub struct SingerCache {
    dir: PathBuf,
}

/// What a lookup did, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// The stored file failed verification and was rebuilt.
    Repaired(String),
}

impl SingerCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SingerCache { dir: dir.into() }
    }

    /// `SIDONLAB_CACHE` if set, otherwise the default directory.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Self::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, q: u64) -> PathBuf {
        self.dir.join(format!("singer-q{q}.json"))
    }

    /// Reads and verifies the entry for `q`; `Ok(None)` when absent.
    pub fn load(&self, q: u64) -> Result<Option<PerfectDifferenceSet>> {
        let path = self.path_for(q);
        let body = match fs::read_to_string(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |reason: String| Error::CacheCorrupt {
            path: path.clone(),
            reason,
        };
        let d: PerfectDifferenceSet =
            serde_json::from_str(&body).map_err(|e| corrupt(e.to_string()))?;
        if d.q != q {
            return Err(corrupt(format!("file holds q = {}", d.q)));
        }
        d.verify().map_err(corrupt)?;
        Ok(Some(d))
    }

    pub fn store(&self, d: &PerfectDifferenceSet) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".singer-q{}.json.tmp", d.q));
        fs::write(&tmp, serde_json::to_string(d)?)?;
        fs::rename(tmp, self.path_for(d.q))?;
        Ok(())
    }

    /// Cached Singer set, building and storing it on a miss or a corrupt entry.
    pub fn get_or_build(
        &self,
        q: u64,
        limits: &Limits,
    ) -> Result<(PerfectDifferenceSet, CacheOutcome)> {
        let outcome = match self.load(q) {
            Ok(Some(d)) => return Ok((d, CacheOutcome::Hit)),
            Ok(None) => CacheOutcome::Miss,
            Err(Error::CacheCorrupt { reason, .. }) => CacheOutcome::Repaired(reason),
            Err(e) => return Err(e),
        };
        let d = singer_with_limits(q, limits)?;
        self.store(&d)?;
        Ok((d, outcome))
    }
}
