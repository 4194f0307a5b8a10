//! On-disk store for Gram tables.
//!
//! One JSON file per (datum, weight). The file name carries the format
//! version and a digest of the datum fingerprint, so a version bump or a
//! different datum simply misses. Every load re-derives one matrix entry,
//! chosen by the seeded generator, and drops the file when it disagrees.

use framedcb::falg::{words_of_weight, FAlg, GramTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::sync::Arc;

pub const CACHE_FORMAT_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "FRAMEDCB_CACHE_DIR";

#[derive(Serialize, Deserialize)]
pub struct CacheFile {
    pub format_version: u32,
    pub library_version: String,
    pub fingerprint: String,
    pub table: GramTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheEvent {
    Hit(Vec<i64>),
    Miss(Vec<i64>),
    Rejected { weight: Vec<i64>, reason: String },
    Stored(Vec<i64>),
}

pub struct GramCache {
    dir: PathBuf,
    version: u32,
    seed: u64,
    events: Vec<CacheEvent>,
}

fn digest(s: &str) -> String {
    let h = Sha256::digest(s.as_bytes());
    h.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

impl GramCache {
    pub fn new(dir: impl Into<PathBuf>, seed: u64) -> Self {
        Self::with_version(dir, seed, CACHE_FORMAT_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, seed: u64, version: u32) -> Self {
        GramCache { dir: dir.into(), version, seed, events: Vec::new() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn events(&self) -> &[CacheEvent] {
        &self.events
    }

    fn prefix(&self, f: &FAlg) -> String {
        format!("gram-v{}-{}-", self.version, digest(&f.datum().fingerprint()))
    }

    pub fn path_for(&self, f: &FAlg, nu: &[i64]) -> PathBuf {
        let w: Vec<String> = nu.iter().map(|x| x.to_string()).collect();
        self.dir.join(format!("{}{}.json", self.prefix(f), w.join("_")))
    }

    pub fn store(&mut self, f: &FAlg, t: &GramTable) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let file = CacheFile {
            format_version: self.version,
            library_version: framedcb::VERSION.to_string(),
            fingerprint: f.datum().fingerprint(),
            table: t.clone(),
        };
        let path = self.path_for(f, &t.weight);
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec(&file).map_err(std::io::Error::other)?)?;
        std::fs::rename(&tmp, &path)?;
        self.events.push(CacheEvent::Stored(t.weight.clone()));
        Ok(())
    }

    /// Reads and validates the table for ν; rejected files are deleted.
    pub fn load(&mut self, f: &FAlg, nu: &[i64]) -> Option<GramTable> {
        let path = self.path_for(f, nu);
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(_) => {
                self.events.push(CacheEvent::Miss(nu.to_vec()));
                return None;
            }
        };
        match self.validate(f, nu, &bytes) {
            Ok(t) => {
                self.events.push(CacheEvent::Hit(nu.to_vec()));
                Some(t)
            }
            Err(reason) => {
                eprintln!("warning: discarding cached Gram table {}: {reason}; recomputing", path.display());
                let _ = std::fs::remove_file(&path);
                self.events.push(CacheEvent::Rejected { weight: nu.to_vec(), reason });
                None
            }
        }
    }

    fn validate(&self, f: &FAlg, nu: &[i64], bytes: &[u8]) -> Result<GramTable, String> {
        let file: CacheFile = serde_json::from_slice(bytes).map_err(|e| format!("unreadable ({e})"))?;
        if file.format_version != self.version {
            return Err(format!("format version {} (expected {})", file.format_version, self.version));
        }
        if file.fingerprint != f.datum().fingerprint() {
            return Err("datum fingerprint differs".into());
        }
        let t = file.table;
        if t.weight != nu || t.words != words_of_weight(nu) {
            return Err("word list differs".into());
        }
        let k = t.words.len();
        if t.matrix.len() != k || t.matrix.iter().any(|r| r.len() != k) || t.rank + t.kernel.len() != k {
            return Err("table shape is inconsistent".into());
        }
        if k > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ nu.iter().fold(0u64, |h, &x| h.wrapping_mul(31).wrapping_add(x as u64)));
            let (a, b) = (rng.random_range(0..k), rng.random_range(0..k));
            let fresh = f.pair_words(&t.words[a], &t.words[b]);
            if fresh != t.matrix[a][b] {
                return Err(format!("validation entry ({a},{b}) disagrees"));
            }
        }
        Ok(t)
    }

    /// Gram table of ν, from disk when valid, otherwise computed and stored.
    pub fn gram(&mut self, f: &FAlg, nu: &[i64]) -> std::io::Result<Arc<GramTable>> {
        if let Some(t) = self.load(f, nu) {
            f.preload_gram(t);
            return Ok(f.gram(nu));
        }
        let t = f.gram(nu);
        self.store(f, &t)?;
        Ok(t)
    }

    /// Preloads every valid stored table of this datum.
    pub fn warm(&mut self, f: &FAlg) {
        let prefix = self.prefix(f);
        let Ok(rd) = std::fs::read_dir(&self.dir) else { return };
        let mut names: Vec<String> = rd
            .filter_map(|e| e.ok())
            .filter_map(|e| e.file_name().into_string().ok())
            .filter(|n| n.starts_with(&prefix) && n.ends_with(".json"))
            .collect();
        names.sort();
        for n in names {
            let body = &n[prefix.len()..n.len() - ".json".len()];
            let nu: Option<Vec<i64>> = body.split('_').map(|t| t.parse().ok()).collect();
            match nu {
                Some(nu) if nu.len() == f.rank() => {
                    if let Some(t) = self.load(f, &nu) {
                        f.preload_gram(t);
                    }
                }
                _ => eprintln!("warning: ignoring unrecognized cache file {n}"),
            }
        }
    }

    /// Writes every table held by `f` that is not on disk yet.
    pub fn persist(&mut self, f: &FAlg) -> std::io::Result<()> {
        for t in f.cached_grams() {
            if !self.path_for(f, &t.weight).exists() {
                self.store(f, &t)?;
            }
        }
        Ok(())
    }
}
