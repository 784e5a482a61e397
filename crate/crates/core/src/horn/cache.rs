use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::HornTriple;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "WEILGROUP_CACHE";

/// One JSON document per ambient size `n` holding every `T^n_p`.
///
/// Unreadable or malformed files are treated as missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornCache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    n: usize,
    /// `levels[p - 1]` lists `T^n_p` as `[[I], [J], [K]]` triples.
    levels: Vec<Vec<[Vec<usize>; 3]>>,
}

impl HornCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Cache at `$WEILGROUP_CACHE`, if set and nonempty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, n: usize) -> PathBuf {
        self.dir.join(format!("horn-n{n}.json"))
    }

    pub fn load(&self, n: usize) -> Option<Vec<Vec<HornTriple>>> {
        let text = fs::read_to_string(self.path_for(n)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.n != n || file.levels.len() != n {
            return None;
        }
        let mut levels = Vec::with_capacity(n);
        for (idx, raw) in file.levels.into_iter().enumerate() {
            let mut level = Vec::with_capacity(raw.len());
            for [i, j, k] in raw {
                let t = HornTriple::from_vecs(n, i, j, k).ok()?;
                if t.p() != idx + 1 {
                    return None;
                }
                level.push(t);
            }
            if !level.windows(2).all(|w| w[0] < w[1]) {
                return None;
            }
            levels.push(level);
        }
        Some(levels)
    }

    /// Writes through a temporary file so readers never see a partial document.
    pub fn store(&self, n: usize, levels: &[Vec<HornTriple>]) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let file = CacheFile {
            n,
            levels: levels.iter().map(|lv| lv.iter().map(|t| [t.i.elems().to_vec(), t.j.elems().to_vec(), t.k.elems().to_vec()]).collect()).collect(),
        };
        let text = serde_json::to_string(&file).map_err(io::Error::other)?;
        let tmp = self.dir.join(format!(".horn-n{n}.{}.tmp", std::process::id()));
        fs::write(&tmp, text)?;
        fs::rename(&tmp, self.path_for(n))
    }
}

#[cfg(test)]
mod tests {
    use super::super::HornTable;
    use super::*;

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = HornCache::new(dir.path());
        let cold = HornTable::new().with_cache(Some(cache.clone()));
        let level = cold.level(4).unwrap();
        assert_eq!(cache.load(4).unwrap(), *level);

        fs::write(cache.path_for(4), "{not json").unwrap();
        assert!(cache.load(4).is_none());
        let rebuilt = HornTable::new().with_cache(Some(cache.clone())).level(4).unwrap();
        assert_eq!(rebuilt, level);
        assert_eq!(cache.load(4).unwrap(), *level);

        fs::write(cache.path_for(4), r#"{"n":4,"levels":[[[[1],[1],[2]]],[],[],[]]}"#).unwrap();
        assert!(cache.load(4).is_none());
    }
}
