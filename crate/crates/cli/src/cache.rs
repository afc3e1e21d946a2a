//! Versioned on-disk cache of `L` and `K` polynomials keyed by `N`.
//! An unreadable or foreign file is reported and ignored.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use osp_kostka::kostka::KostkaEngine;
use osp_kostka::{BiWeight, QPoly};
use serde::{Deserialize, Serialize};

pub const VERSION: &str = "osp-kostka-cache/1";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    L,
    K,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Entry {
    pub n: usize,
    pub kind: Kind,
    /// `[α]` for `L`, `[λ, μ]` for `K`, each as `"eps;delta"`.
    pub args: Vec<String>,
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub version: String,
    pub entries: Vec<Entry>,
}

impl CacheFile {
    pub fn empty() -> Self {
        Self { version: VERSION.to_string(), entries: Vec::new() }
    }

    /// Missing file: empty cache. Unreadable, corrupt or wrong version:
    /// warning on stderr, empty cache.
    pub fn load(path: &Path) -> Self {
        if !path.exists() {
            return Self::empty();
        }
        match Self::try_load(path) {
            Ok(c) if c.version == VERSION => c,
            Ok(c) => {
                eprintln!("warning: ignoring cache {} with version {:?}", path.display(), c.version);
                Self::empty()
            }
            Err(e) => {
                eprintln!("warning: ignoring unreadable cache {}: {e:#}", path.display());
                Self::empty()
            }
        }
    }

    fn try_load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(self)?).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, path).with_context(|| format!("replacing {}", path.display()))?;
        Ok(())
    }

    /// Seed `engine` with every entry for `n`; entries that do not parse
    /// are skipped.
    pub fn preload(&self, n: usize, engine: &KostkaEngine) {
        let parse = |s: &String| s.parse::<BiWeight>().ok();
        let mut l = Vec::new();
        let mut k = Vec::new();
        for e in self.entries.iter().filter(|e| e.n == n) {
            let poly = QPoly::new(e.coeffs.clone());
            match (e.kind.clone(), e.args.as_slice()) {
                (Kind::L, [a]) => {
                    if let Some(a) = parse(a) {
                        l.push((a, poly));
                    }
                }
                (Kind::K, [a, b]) => {
                    if let (Some(a), Some(b)) = (parse(a), parse(b)) {
                        k.push(((a, b), poly));
                    }
                }
                _ => {}
            }
        }
        engine.preload(l, k);
    }

    /// Replace the entries for `n` with the engine's current caches.
    pub fn absorb(&mut self, n: usize, engine: &KostkaEngine) {
        let mut map: BTreeMap<(Kind, Vec<String>), Vec<i64>> = BTreeMap::new();
        for e in self.entries.iter().filter(|e| e.n == n) {
            map.insert((e.kind.clone(), e.args.clone()), e.coeffs.clone());
        }
        for (a, p) in engine.cached_l() {
            map.insert((Kind::L, vec![a.to_string()]), p.coeffs().to_vec());
        }
        for ((a, b), p) in engine.cached_k() {
            map.insert((Kind::K, vec![a.to_string(), b.to_string()]), p.coeffs().to_vec());
        }
        self.entries.retain(|e| e.n != n);
        self.entries.extend(map.into_iter().map(|((kind, args), coeffs)| Entry { n, kind, args, coeffs }));
        self.entries.sort();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use osp_kostka::OspRootData;

    #[test]
    fn store_then_load_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let data = OspRootData::new(4).unwrap();
        let engine = KostkaEngine::new(&data);
        engine.kostka(&"1,0;1".parse().unwrap(), &data.zero()).unwrap();
        let mut cache = CacheFile::empty();
        cache.absorb(4, &engine);
        assert!(!cache.entries.is_empty());
        cache.store(&path).unwrap();
        assert_eq!(CacheFile::load(&path), cache);

        let warm = KostkaEngine::new(&data);
        cache.preload(4, &warm);
        assert_eq!(warm.cached_k(), engine.cached_k());
    }

    #[test]
    fn corrupt_or_foreign_files_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        fs::write(&path, "{not json").unwrap();
        assert_eq!(CacheFile::load(&path), CacheFile::empty());
        fs::write(&path, r#"{"version":"other/9","entries":[]}"#).unwrap();
        assert_eq!(CacheFile::load(&path), CacheFile::empty());
        assert_eq!(CacheFile::load(&dir.path().join("missing.json")), CacheFile::empty());
    }
}
