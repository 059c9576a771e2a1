//! Report files: atomic writes and validation of cached sweep cells.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

use ribbonforge::ribbon::SCHEMA;

/// Pretty JSON with a trailing newline, written to a temporary sibling and renamed.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    let tmp = dir.join(format!(".{}.tmp-{}", path.file_name().unwrap().to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

pub fn cell_path(dir: &Path, m: u32, n: u32) -> PathBuf {
    dir.join(format!("ribbon-radford-{m}-{n}.json"))
}

/// Summary of a ribbon report on disk.
pub struct CachedCell {
    pub quasi_ribbon_count: usize,
    pub ribbon_count: usize,
    pub passed: bool,
}

/// A cached report is valid when it parses, carries the current schema and matches the cell.
pub fn read_cell(path: &Path, m: u32, n: u32) -> Option<CachedCell> {
    let text = fs::read_to_string(path).ok()?;
    let v: serde_json::Value = serde_json::from_str(&text).ok()?;
    if v.get("schema")?.as_str()? != SCHEMA || v.get("m")?.as_u64()? != m as u64 || v.get("n")?.as_u64()? != n as u64 {
        return None;
    }
    let checks = v.get("checks")?.as_array()?;
    let passed = checks.iter().all(|c| c.get("passed").and_then(|p| p.as_bool()) == Some(true));
    Some(CachedCell {
        quasi_ribbon_count: v.get("quasi_ribbon_count")?.as_u64()? as usize,
        ribbon_count: v.get("ribbon_count")?.as_u64()? as usize,
        passed,
    })
}
