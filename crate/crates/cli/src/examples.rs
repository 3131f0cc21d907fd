//! Spec files compiled into the binary.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

pub const EXAMPLES: [(&str, &str); 6] = [
    ("heisenberg.json", include_str!("../specs/heisenberg.json")),
    ("identity.json", include_str!("../specs/identity.json")),
    ("filiform.json", include_str!("../specs/filiform.json")),
    ("ramified.json", include_str!("../specs/ramified.json")),
    ("graded-heisenberg.json", include_str!("../specs/graded-heisenberg.json")),
    ("heisenberg-q2.json", include_str!("../specs/heisenberg-q2.json")),
];

/// Embedded text for a bare example name such as `heisenberg.json`.
pub fn embedded(name: &str) -> Option<&'static str> {
    EXAMPLES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Read `path` from disk, falling back to the embedded copy when no such
/// file exists and the name matches an example.
pub fn load(path: &Path) -> io::Result<String> {
    match fs::read_to_string(path) {
        Err(e) if e.kind() == io::ErrorKind::NotFound => path
            .to_str()
            .and_then(embedded)
            .map(str::to_string)
            .ok_or(e),
        other => other,
    }
}

pub fn dump(dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, text) in EXAMPLES {
        let path = dir.join(name);
        crate::write_atomic(&path, text)?;
        written.push(path);
    }
    Ok(written)
}
