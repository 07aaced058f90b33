//! Reference interval estimates `[m_l, M_l]`, cached on disk.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::symbol::{sample_eigs, GridKind, MatrixSymbol};

/// Resolution of the reference sample.
pub const REFERENCE_N: usize = 500;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceIntervals {
    pub symbol_hash: String,
    pub n: usize,
    pub grid: GridKind,
    pub intervals: Vec<(f64, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Computed,
    /// A cached file existed but belonged to a different symbol.
    Replaced,
}

/// `GLT_CACHE_DIR`, else `$HOME/.cache/glt`, else a directory under the
/// system temp dir.
pub fn default_cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os("GLT_CACHE_DIR") {
        return PathBuf::from(d);
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("glt"),
        None => std::env::temp_dir().join("glt-cache"),
    }
}

impl ReferenceIntervals {
    pub fn compute(sym: &MatrixSymbol, n: usize, grid: GridKind) -> Result<Self> {
        let sample = sample_eigs(sym, n, grid)?;
        Ok(Self { symbol_hash: sym.content_hash(), n, grid, intervals: sample.intervals })
    }

    pub fn cache_path(dir: &Path, n: usize, grid: GridKind) -> PathBuf {
        dir.join(format!("intervals-{}-{n}.json", grid.name()))
    }

    pub fn load_or_compute(
        sym: &MatrixSymbol,
        n: usize,
        grid: GridKind,
        cache_dir: &Path,
    ) -> Result<(Self, CacheStatus)> {
        let path = Self::cache_path(cache_dir, n, grid);
        let hash = sym.content_hash();
        let mut status = CacheStatus::Computed;
        if let Ok(text) = std::fs::read_to_string(&path) {
            match serde_json::from_str::<Self>(&text) {
                Ok(c) if c.symbol_hash == hash && c.n == n && c.grid == grid => return Ok((c, CacheStatus::Hit)),
                _ => status = CacheStatus::Replaced,
            }
        }
        let fresh = Self::compute(sym, n, grid)?;
        std::fs::create_dir_all(cache_dir)?;
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(&fresh)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok((fresh, status))
    }
}
