//! On-disk cache of command outputs, keyed by a hash of the normalized request.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Bumped whenever the output format or any computation behind it changes.
pub const FORMAT_VERSION: &str = "denomlab-cache-v1";

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    exit_code: i32,
    output: String,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn key(parts: &[String]) -> String {
        let mut h = Sha256::new();
        h.update(FORMAT_VERSION.as_bytes());
        for p in parts {
            h.update([0u8]);
            h.update(p.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Cached `(output, exit code)`; entries written by another format version are ignored.
    pub fn get(&self, key: &str) -> Option<(String, i32)> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let e: Entry = serde_json::from_str(&text).ok()?;
        (e.version == FORMAT_VERSION).then_some((e.output, e.exit_code))
    }

    pub fn put(&self, key: &str, output: &str, exit_code: i32) -> Result<()> {
        let e = Entry { version: FORMAT_VERSION.into(), exit_code, output: output.into() };
        let tmp = self.dir.join(format!(".{key}.tmp"));
        fs::write(&tmp, serde_json::to_string(&e)?)?;
        fs::rename(&tmp, self.path(key))?;
        Ok(())
    }
}
