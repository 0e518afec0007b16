//! On-disk memo directories shared by the table caches.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;

/// Root directory for memo tables; `lambda_tables/` and `witt_tables/` live below it.
pub const TABLE_DIR_ENV: &str = "LAMBDAFORGE_TABLE_DIR";

pub fn root_from_env() -> Option<PathBuf> {
    std::env::var_os(TABLE_DIR_ENV).filter(|d| !d.is_empty()).map(PathBuf::from)
}

/// Writes `text` to a temporary sibling and renames it over `target`, so a reader sees
/// either the old file, no file, or the complete new one.
pub fn write_atomic(target: &Path, text: &str) -> Result<()> {
    let dir = target.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let name = target.file_name().and_then(|n| n.to_str()).unwrap_or("table");
    let tmp = dir.join(format!(".{name}.{}.{:?}.tmp", std::process::id(), std::thread::current().id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, target)?;
    Ok(())
}
