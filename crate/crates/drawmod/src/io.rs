//! Reading and writing drawing, prototype and catalog files.

use std::fs;
use std::path::{Path, PathBuf};

use drawmod_core::codec::{load_catalog, load_drawing, save_drawing, CodecError};
use drawmod_core::drawing::Drawing;
use drawmod_core::speccing::Catalog;

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Codec {
        path: String,
        #[source]
        source: CodecError,
    },
}

impl FileError {
    pub fn path(&self) -> &str {
        match self {
            FileError::Io { path, .. } | FileError::Codec { path, .. } => path,
        }
    }
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, FileError> {
    fs::read(path).map_err(|source| FileError::Io {
        path: display(path),
        source,
    })
}

/// Writes through a sibling temporary file so a failed write never leaves a
/// truncated file behind.
pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), FileError> {
    let io = |source| FileError::Io {
        path: display(path),
        source,
    };
    let mut tmp = PathBuf::from(path);
    let mut name = tmp.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".tmp");
    tmp.set_file_name(name);
    fs::write(&tmp, bytes).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

pub fn read_drawing(path: &Path) -> Result<Drawing, FileError> {
    load_drawing(&read_bytes(path)?).map_err(|source| FileError::Codec {
        path: display(path),
        source,
    })
}

pub fn write_drawing(path: &Path, d: &Drawing) -> Result<(), FileError> {
    write_bytes(path, &save_drawing(d))
}

pub fn read_catalog(path: &Path) -> Result<Catalog, FileError> {
    load_catalog(&read_bytes(path)?).map_err(|source| FileError::Codec {
        path: display(path),
        source,
    })
}

/// Loads many drawings concurrently. Failures are reported per file and do
/// not stop the others; results are ordered by path.
pub fn read_drawings(paths: &[PathBuf]) -> (Vec<(String, Drawing)>, Vec<FileError>) {
    let results: Vec<Result<(String, Drawing), FileError>> = std::thread::scope(|s| {
        let handles: Vec<_> = paths
            .iter()
            .map(|p| s.spawn(move || read_drawing(p).map(|d| (display(p), d))))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("drawing reader panicked"))
            .collect()
    });
    let mut ok = Vec::new();
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(x) => ok.push(x),
            Err(e) => errors.push(e),
        }
    }
    ok.sort_by(|a, b| a.0.cmp(&b.0));
    errors.sort_by(|a, b| a.path().cmp(b.path()));
    (ok, errors)
}
