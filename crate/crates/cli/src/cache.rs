//! Content-addressed on-disk cache.
//!
//! Each entry is a JSON file named after the SHA-256 of its canonical key,
//! holding the key, the payload and the payload's SHA-256. A checksum or
//! key mismatch counts as a miss and the entry is rewritten. Writers take
//! an advisory lock on `.lock` and publish by rename, so readers never see
//! a partial file.

use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "DLP_CACHE_DIR";

#[derive(Serialize, Deserialize)]
pub struct Entry {
    pub key: String,
    pub sha256: String,
    pub payload: String,
}

/// How a cached value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Hit,
    Miss,
    /// Entry existed but failed its checksum.
    Repaired,
    Off,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Hit => "hit",
            Status::Miss => "miss",
            Status::Repaired => "repaired",
            Status::Off => "off",
        }
    }
}

pub fn sha256_hex(s: &str) -> String {
    format!("{:x}", Sha256::digest(s.as_bytes()))
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// `explicit` wins over the environment; `disabled` turns caching off.
    pub fn open(explicit: Option<PathBuf>, disabled: bool) -> Self {
        if disabled {
            return Cache { dir: None };
        }
        let dir = explicit.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
        Cache { dir }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", &sha256_hex(key)[..32])))
    }

    /// Payload for `key` if present and intact; the flag reports a corrupt
    /// entry.
    pub fn get(&self, key: &str) -> (Option<String>, bool) {
        let Some(path) = self.path_for(key) else { return (None, false) };
        let Ok(text) = fs::read_to_string(&path) else { return (None, false) };
        match serde_json::from_str::<Entry>(&text) {
            Ok(e) if e.key == key && e.sha256 == sha256_hex(&e.payload) => (Some(e.payload), false),
            _ => (None, true),
        }
    }

    pub fn put(&self, key: &str, payload: &str) -> Result<(), CliError> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path_for(key)) else { return Ok(()) };
        fs::create_dir_all(dir)?;
        let lock = File::options().create(true).truncate(false).write(true).open(dir.join(".lock"))?;
        lock.lock()?;
        let entry = Entry { key: key.to_string(), sha256: sha256_hex(payload), payload: payload.to_string() };
        let tmp = dir.join(format!(".tmp-{}", std::process::id()));
        let mut f = File::create(&tmp)?;
        f.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, &path)?;
        lock.unlock()?;
        Ok(())
    }

    /// Cached payload for `key`, computing and storing it on a miss.
    pub fn get_or_compute(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<String, CliError>,
    ) -> Result<(String, Status), CliError> {
        if self.dir.is_none() {
            return Ok((compute()?, Status::Off));
        }
        let (hit, corrupt) = self.get(key);
        if let Some(p) = hit {
            return Ok((p, Status::Hit));
        }
        if corrupt {
            eprintln!("warning: cache entry for {key:?} failed its checksum; recomputing");
        }
        let p = compute()?;
        self.put(key, &p)?;
        Ok((p, if corrupt { Status::Repaired } else { Status::Miss }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_repair() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(Some(dir.path().to_path_buf()), false);
        let (v, s) = c.get_or_compute("k", || Ok("abc".into())).unwrap();
        assert_eq!((v.as_str(), s), ("abc", Status::Miss));
        let (v, s) = c.get_or_compute("k", || unreachable!()).unwrap();
        assert_eq!((v.as_str(), s), ("abc", Status::Hit));
        let path = c.path_for("k").unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("abc", "abd");
        fs::write(&path, text).unwrap();
        let (v, s) = c.get_or_compute("k", || Ok("abc".into())).unwrap();
        assert_eq!((v.as_str(), s), ("abc", Status::Repaired));
    }
}
