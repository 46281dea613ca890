//! Content-addressed closure cache.
//!
//! An entry is the breadth-first word list of a closure, stored under the
//! sha256 of the generators. Loading replays the words and re-checks
//! closure, so a damaged entry is detected and rebuilt.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use k3m20_core::linalg::Matrix;
use k3m20_core::matgroup::{ClosureWords, GroupError, MatGroup};
use k3m20_core::rational::fmt_rat;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "K3M20_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    /// An entry existed but failed verification and was replaced.
    Rebuilt,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    digest: String,
    order: usize,
    steps: Vec<(u32, u16)>,
}

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Cache {
        Cache { dir }
    }

    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    /// `flag` if given, else the environment variable, else no caching.
    pub fn resolve(flag: Option<PathBuf>) -> Cache {
        Cache::new(flag.or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from)))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn digest(generators: &[Matrix]) -> String {
        let mut h = Sha256::new();
        if let Some(g) = generators.first() {
            h.update(g.field().to_string());
            for c in g.field().minpoly() {
                h.update(fmt_rat(c));
                h.update(",");
            }
            h.update(format!(";{};", g.rows()));
        }
        for g in generators {
            for c in g.key() {
                h.update(fmt_rat(&c));
                h.update(",");
            }
            h.update("|");
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, digest: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{digest}.json")))
    }

    pub fn group(&self, generators: Vec<Matrix>) -> Result<(MatGroup, CacheStatus), GroupError> {
        let Some(path) = self.path(&Self::digest(&generators)) else {
            return Ok((MatGroup::generate(generators)?, CacheStatus::Disabled));
        };
        let digest = Self::digest(&generators);
        let mut status = CacheStatus::Miss;
        if let Ok(text) = fs::read_to_string(&path) {
            match serde_json::from_str::<Entry>(&text) {
                Ok(e) if e.digest == digest => {
                    let words = ClosureWords { steps: e.steps };
                    match MatGroup::from_words(generators.clone(), &words) {
                        Ok(g) if g.order() == e.order => return Ok((g, CacheStatus::Hit)),
                        _ => status = CacheStatus::Rebuilt,
                    }
                }
                _ => status = CacheStatus::Rebuilt,
            }
        }
        let g = MatGroup::generate(generators)?;
        let entry = Entry { digest, order: g.order(), steps: g.export_words().steps };
        // a cache that cannot be written only costs time
        let _ = self.write(&path, &entry);
        Ok((g, status))
    }

    fn write(&self, path: &Path, entry: &Entry) -> io::Result<()> {
        if let Some(dir) = &self.dir {
            fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(entry)?)?;
        fs::rename(tmp, path)
    }

    /// `(digest, group order)` of every readable entry.
    pub fn entries(&self) -> Vec<(String, usize)> {
        let Some(dir) = &self.dir else {
            return Vec::new();
        };
        let Ok(rd) = fs::read_dir(dir) else {
            return Vec::new();
        };
        let mut out: Vec<(String, usize)> = rd
            .filter_map(Result::ok)
            .filter(|e| e.path().extension().is_some_and(|x| x == "json"))
            .filter_map(|e| fs::read_to_string(e.path()).ok())
            .filter_map(|t| serde_json::from_str::<Entry>(&t).ok())
            .map(|e| (e.digest, e.order))
            .collect();
        out.sort();
        out
    }

    pub fn clear(&self) -> io::Result<usize> {
        let Some(dir) = &self.dir else {
            return Ok(0);
        };
        let mut n = 0;
        if dir.exists() {
            for e in fs::read_dir(dir)? {
                let p = e?.path();
                if p.extension().is_some_and(|x| x == "json") {
                    fs::remove_file(p)?;
                    n += 1;
                }
            }
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use k3m20_core::Field;

    fn gens() -> Vec<Matrix> {
        let q = Field::rationals();
        vec![Matrix::from_ints(&q, &[&[0, -1], &[1, 0]]), Matrix::from_ints(&q, &[&[1, 0], &[0, -1]])]
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let (g, s) = cache.group(gens()).unwrap();
        assert_eq!((g.order(), s), (8, CacheStatus::Miss));
        let (g, s) = cache.group(gens()).unwrap();
        assert_eq!((g.order(), s), (8, CacheStatus::Hit));
        assert_eq!(cache.entries().len(), 1);

        let path = cache.path(&Cache::digest(&gens())).unwrap();
        let mut e: Entry = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        e.steps.pop();
        fs::write(&path, serde_json::to_vec(&e).unwrap()).unwrap();
        let (g, s) = cache.group(gens()).unwrap();
        assert_eq!((g.order(), s), (8, CacheStatus::Rebuilt));

        fs::write(&path, "not json").unwrap();
        assert_eq!(cache.group(gens()).unwrap().1, CacheStatus::Rebuilt);
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.entries().is_empty());
    }

    #[test]
    fn digest_depends_on_entries() {
        let mut other = gens();
        other.swap(0, 1);
        assert_ne!(Cache::digest(&gens()), Cache::digest(&other));
        assert_eq!(Cache::digest(&gens()).len(), 64);
    }
}
