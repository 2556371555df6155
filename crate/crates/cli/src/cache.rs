//! On-disk cache of generated maps, keyed by type, k and format version.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use lieperm::exppoly::{compute_p, PolyMap, FORMAT_VERSION};
use lieperm::{LieType, Result};

pub const CACHE_ENV: &str = "LIEPERM_CACHE_DIR";

pub fn cache_root(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
        return Some(PathBuf::from(p));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".lieperm"))
}

pub fn entry_path(root: &Path, t: LieType, k: u64) -> PathBuf {
    root.join(format!("v{FORMAT_VERSION}")).join(format!("{t}-k{k}.json"))
}

/// Writes through a temporary sibling and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

pub struct Loaded {
    pub map: PolyMap,
    pub bytes: Vec<u8>,
    pub cache_hit: bool,
}

/// Returns the cached map when a valid entry exists; otherwise generates it
/// and tries to store it. Cache problems only produce warnings.
pub fn load_or_generate(root: Option<&Path>, t: LieType, k: u64) -> Result<Loaded> {
    let path = root.map(|r| entry_path(r, t, k));
    if let Some(p) = &path {
        if let Ok(bytes) = fs::read(p) {
            match PolyMap::deserialize(&bytes) {
                Ok(map) if map.lie_type() == t && map.k() == k => return Ok(Loaded { map, bytes, cache_hit: true }),
                _ => eprintln!("warning: ignoring unreadable cache entry {}", p.display()),
            }
        }
    }
    let map = compute_p(t, k)?;
    let bytes = map.serialize();
    if let Some(p) = &path {
        if let Err(e) = write_atomic(p, &bytes) {
            eprintln!("warning: could not write cache entry {}: {e}", p.display());
        }
    }
    Ok(Loaded { map, bytes, cache_hit: false })
}
