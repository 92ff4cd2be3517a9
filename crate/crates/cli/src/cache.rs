//! Append-only JSONL cache of ν values, keyed by polarization type and tool
//! version. Each line carries a SHA-256 checksum of its payload; lines that
//! fail to parse or verify are counted and ignored.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use isotropic_core::{CountValue, PolarizationType};

use crate::TOOL_VERSION;

pub const CACHE_FILE: &str = "nu-cache.jsonl";
pub const CACHE_DIR_ENV: &str = "ISOCOUNT_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub ptype: PolarizationType,
    pub count: CountValue,
    pub tool_version: String,
    pub checksum: String,
}

impl CacheEntry {
    pub fn new(ptype: PolarizationType, count: CountValue) -> Self {
        let checksum = checksum(&ptype, &count, TOOL_VERSION);
        Self { ptype, count, tool_version: TOOL_VERSION.into(), checksum }
    }

    pub fn verify(&self) -> bool {
        self.checksum == checksum(&self.ptype, &self.count, &self.tool_version)
    }
}

fn checksum(ptype: &PolarizationType, count: &CountValue, version: &str) -> String {
    let payload = serde_json::to_string(&(ptype, count, version)).expect("serializable");
    format!("{:x}", Sha256::digest(payload.as_bytes()))
}

/// Default location: `$ISOCOUNT_CACHE_DIR`, else the platform cache dir.
pub fn default_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV)
        .map(PathBuf::from)
        .or_else(|| dirs::cache_dir().map(|d| d.join("isocount")))
        .unwrap_or_else(|| PathBuf::from(".isocount-cache"))
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: HashMap<PolarizationType, CountValue>,
    pending: Vec<CacheEntry>,
    pub rejected: usize,
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        let path = dir.join(CACHE_FILE);
        let mut entries = HashMap::new();
        let mut rejected = 0;
        if path.exists() {
            for line in fs::read_to_string(&path)?.lines().filter(|l| !l.trim().is_empty()) {
                match serde_json::from_str::<CacheEntry>(line) {
                    Ok(e) if e.tool_version != TOOL_VERSION => {}
                    Ok(e) if e.verify() => {
                        entries.insert(e.ptype, e.count);
                    }
                    _ => rejected += 1,
                }
            }
        }
        Ok(Self { path, entries, pending: Vec::new(), rejected })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, ptype: &PolarizationType) -> Option<&CountValue> {
        self.entries.get(ptype)
    }

    pub fn insert(&mut self, ptype: PolarizationType, count: CountValue) {
        self.entries.insert(ptype.clone(), count.clone());
        self.pending.push(CacheEntry::new(ptype, count));
    }

    /// Appends the entries recorded since `open`.
    pub fn flush(&mut self) -> std::io::Result<()> {
        if self.pending.is_empty() {
            return Ok(());
        }
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut buf = String::new();
        for e in self.pending.drain(..) {
            buf.push_str(&serde_json::to_string(&e).expect("serializable"));
            buf.push('\n');
        }
        file.write_all(buf.as_bytes())
    }
}
