//! Content-addressed store for rendered command output.
//!
//! A key hashes the crate version, the operation name, the spec and a
//! parameter string. Entries are written to a temporary file in the cache
//! directory and renamed into place, so concurrent writers never expose a
//! partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$GTVAR_CACHE_DIR`, else `$XDG_CACHE_HOME/gtvar`, else
    /// `$HOME/.cache/gtvar`, else `.gtvar-cache`.
    pub fn default_dir() -> PathBuf {
        let var = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty());
        if let Some(d) = var("GTVAR_CACHE_DIR") {
            return d.into();
        }
        if let Some(d) = var("XDG_CACHE_HOME") {
            return Path::new(&d).join("gtvar");
        }
        if let Some(h) = var("HOME") {
            return Path::new(&h).join(".cache").join("gtvar");
        }
        PathBuf::from(".gtvar-cache")
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(op: &str, spec: &gtvar::GroupSpec, params: &str) -> String {
        let mut h = Sha256::new();
        for part in [env!("CARGO_PKG_VERSION"), op, &spec.to_string(), params] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(key)
    }

    /// A missing or unreadable entry is a miss.
    pub fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.path(key)).ok()
    }

    pub fn put(&self, key: &str, contents: &str) -> Result<()> {
        let path = self.path(key);
        let parent = path.parent().expect("entry has a parent");
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        let mut tmp =
            tempfile::NamedTempFile::new_in(parent).map_err(|e| CliError::io(parent, e))?;
        tmp.write_all(contents.as_bytes())
            .map_err(|e| CliError::io(tmp.path(), e))?;
        tmp.persist(&path)
            .map_err(|e| CliError::io(&path, e.error))?;
        Ok(())
    }

    /// Returns the cached value for `key`, computing and storing it on a miss.
    pub fn get_or_insert_with(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<String>,
    ) -> Result<String> {
        if let Some(hit) = self.get(key) {
            return Ok(hit);
        }
        let value = compute()?;
        self.put(key, &value)?;
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_key_separation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let s = gtvar::GroupSpec::new(5, &[0, 1, 3]).unwrap();
        let k1 = Cache::key("hilbert", &s, "table");
        let k2 = Cache::key("hilbert", &s, "json");
        assert_ne!(k1, k2);
        assert_eq!(cache.get(&k1), None);
        cache.put(&k1, "abc").unwrap();
        assert_eq!(cache.get(&k1).as_deref(), Some("abc"));
        let v = cache
            .get_or_insert_with(&k1, || panic!("should hit"))
            .unwrap();
        assert_eq!(v, "abc");
        let v = cache.get_or_insert_with(&k2, || Ok("x".into())).unwrap();
        assert_eq!((v.as_str(), cache.get(&k2).as_deref()), ("x", Some("x")));
    }
}
