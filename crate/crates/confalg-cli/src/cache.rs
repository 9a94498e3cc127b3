//! Result cache: content-addressed JSON documents.
//!
//! The key hashes the canonicalized input algebra together with every
//! configuration field that affects the math; the value is the emitted JSON
//! document. A hit must reproduce the cold-run output byte for byte, so the
//! cache stores exactly what the JSON renderer produced and all other
//! formats render from the parsed document. Cache failures are soft: on any
//! I/O or parse problem the result is recomputed.

use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub const ENV_CACHE_DIR: &str = "CONFALG_CACHE_DIR";

/// Cache directory: the environment variable overrides the flag.
pub fn cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os(ENV_CACHE_DIR) {
        return Some(PathBuf::from(dir));
    }
    flag.map(Path::to_path_buf)
}

/// Content hash of the canonical input and the math-relevant config.
pub fn cache_key(
    canonical_algebra: &str,
    generator_canonical: &str,
    max_card: u32,
    normalization: &str,
) -> String {
    let mut hasher = Sha256::new();
    hasher.update(b"confalg-cache-v1\0");
    hasher.update(canonical_algebra.as_bytes());
    hasher.update(b"\0");
    hasher.update(generator_canonical.as_bytes());
    hasher.update(b"\0");
    hasher.update(max_card.to_le_bytes());
    hasher.update(b"\0");
    hasher.update(normalization.as_bytes());
    hex::encode(hasher.finalize())
}

pub fn lookup(dir: &Path, key: &str) -> Option<String> {
    std::fs::read_to_string(dir.join(format!("{key}.json"))).ok()
}

pub fn store(dir: &Path, key: &str, json: &str) {
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let _ = std::fs::write(dir.join(format!("{key}.json")), json);
}
