//! Merging files on disk, standalone or as a git merge driver.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use sesame_core::{merge_source, EngineError, MergeOptions};
use tempfile::NamedTempFile;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MergeExit {
    Clean = 0,
    Conflicts = 1,
    Failed = 2,
}

impl MergeExit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

impl From<MergeExit> for ExitCode {
    fn from(e: MergeExit) -> Self {
        ExitCode::from(e.code())
    }
}

#[derive(Debug, Error)]
pub enum DriverError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Result of one file merge as seen by the caller.
#[derive(Debug)]
pub struct DriverReport {
    pub exit: MergeExit,
    pub conflicts: usize,
    /// Diagnostics for the user; never part of the merged output.
    pub warnings: Vec<String>,
    pub error: Option<DriverError>,
}

fn read(path: &Path) -> Result<Vec<u8>, DriverError> {
    fs::read(path).map_err(|source| DriverError::Read {
        path: path.into(),
        source,
    })
}

/// Writes `data` to `path` via a sibling temporary file so a failed run never
/// leaves partial output behind.
fn write_atomically(path: &Path, data: &[u8]) -> Result<(), DriverError> {
    let wrap = |source| DriverError::Write {
        path: path.into(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(wrap)?;
    tmp.write_all(data).map_err(wrap)?;
    tmp.as_file().sync_all().map_err(wrap)?;
    tmp.persist(path).map_err(|e| wrap(e.error))?;
    Ok(())
}

fn try_merge(
    base: &Path,
    left: &Path,
    right: &Path,
    out: &Path,
    options: &MergeOptions,
    warnings: &mut Vec<String>,
) -> Result<usize, DriverError> {
    let (b, l, r) = (read(base)?, read(left)?, read(right)?);
    let merged = merge_source(&b, &l, &r, options)?;
    if let Some(e) = &merged.fallback {
        warnings.push(format!(
            "{}: {e}; used unstructured merge instead of {}",
            left.display(),
            options.mode
        ));
    }
    write_atomically(out, &merged.text)?;
    Ok(merged.conflicts)
}

pub fn merge_files(base: &Path, left: &Path, right: &Path, out: &Path, options: &MergeOptions) -> DriverReport {
    let mut warnings = Vec::new();
    match try_merge(base, left, right, out, options, &mut warnings) {
        Ok(conflicts) => DriverReport {
            exit: if conflicts == 0 { MergeExit::Clean } else { MergeExit::Conflicts },
            conflicts,
            warnings,
            error: None,
        },
        Err(e) => DriverReport {
            exit: MergeExit::Failed,
            conflicts: 0,
            warnings,
            error: Some(e),
        },
    }
}

/// Entry point for `merge.<driver>.driver = sesame git-driver %O %A %B`.
/// The result replaces the current version (`%A`).
pub fn git_driver_entry(ancestor: &Path, current: &Path, other: &Path, options: &MergeOptions) -> DriverReport {
    merge_files(ancestor, current, other, current, options)
}
