use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{build_map, ConformalMap};
use crate::error::{Error, Result};
use crate::geom::{Point, Polygon};

/// Identifies the file format.
pub const CACHE_FORMAT: &str = "steinsym-map";
/// Bumped whenever the serialized map layout changes.
pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    polygon_hash: String,
    tol: f64,
    w0: Point,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    header: Header,
    map: ConformalMap,
}

/// Writes `map` as JSON with a versioned header.
pub fn save_map(map: &ConformalMap, path: &Path) -> Result<()> {
    let file = CacheFile {
        header: Header {
            format: CACHE_FORMAT.into(),
            version: CACHE_VERSION,
            polygon_hash: map.target().hash_hex(),
            tol: map.tol(),
            w0: map.w0(),
        },
        map: map.clone(),
    };
    fs::write(path, serde_json::to_vec(&file)?)?;
    Ok(())
}

/// Reads a map written by [`save_map`], checking the header.
pub fn load_map(path: &Path) -> Result<ConformalMap> {
    let file: CacheFile = serde_json::from_slice(&fs::read(path)?)?;
    let h = &file.header;
    if h.format != CACHE_FORMAT || h.version != CACHE_VERSION {
        return Err(Error::InvalidInput(format!(
            "{}: unsupported map file {} v{}",
            path.display(),
            h.format,
            h.version
        )));
    }
    if h.polygon_hash != file.map.target().hash_hex() {
        return Err(Error::InvalidInput(format!(
            "{}: polygon hash does not match the stored target",
            path.display()
        )));
    }
    Ok(file.map)
}

/// A directory of cached maps keyed by polygon hash, `w0` and tolerance.
#[derive(Clone, Debug)]
pub struct MapCache {
    dir: PathBuf,
}

impl MapCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(MapCache { dir })
    }

    fn path(&self, target: &Polygon, w0: Point, tol: f64) -> PathBuf {
        let key = format!(
            "{}-{:016x}{:016x}-{:016x}.json",
            &target.hash_hex()[..16],
            w0.re.to_bits(),
            w0.im.to_bits(),
            tol.to_bits()
        );
        self.dir.join(key)
    }

    /// Returns the cached map or builds and stores it.
    pub fn get_or_build(&self, target: &Polygon, w0: Point, tol: f64) -> Result<ConformalMap> {
        let path = self.path(target, w0, tol);
        if path.exists() {
            if let Ok(m) = load_map(&path) {
                if m.target() == target {
                    return Ok(m);
                }
            }
            log::warn!("ignoring unusable cache entry {}", path.display());
        }
        let m = build_map(target, w0, tol)?;
        save_map(&m, &path)?;
        Ok(m)
    }
}
