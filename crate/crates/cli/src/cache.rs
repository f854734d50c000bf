//! Content-addressed store of quantization results.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

const ENGINE_TAG: &str = concat!("bmq-", env!("CARGO_PKG_VERSION"));

pub struct RunCache {
    dir: PathBuf,
}

impl RunCache {
    /// `BMQ_CACHE_DIR`, else the user cache directory, else the temp dir.
    pub fn from_env() -> Self {
        let dir = std::env::var_os("BMQ_CACHE_DIR")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("XDG_CACHE_HOME").map(|d| PathBuf::from(d).join("bmq")))
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("bmq")))
            .unwrap_or_else(|| std::env::temp_dir().join("bmq"));
        Self { dir }
    }

    pub fn key(canonical_spec: &str) -> String {
        let mut h = Sha256::new();
        h.update(ENGINE_TAG.as_bytes());
        h.update([0u8]);
        h.update(canonical_spec.as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.path(key)).ok()
    }

    /// Write-temp-then-rename, so readers never see a partial entry.
    pub fn put(&self, key: &str, value: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(value.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
