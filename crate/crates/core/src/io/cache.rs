//! Append-only JSON-lines store for exact search results.
//!
//! Every line is one record with the hash of its witness. Lines are
//! validated when the file is read; anything that does not parse, hash or
//! verify is skipped with a warning and never rewritten.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::detect::ForbiddenPattern;
use crate::error::Result;
use crate::ex::ExRecord;
use crate::graph::GraphDoc;
use crate::zar::{Status, ZarKey, ZarRecord};

pub const CACHE_ENV: &str = "TURAN_WORKBENCH_CACHE";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CacheEntry {
    Zar { record: ZarRecord, witness_hash: String },
    Ex { record: ExRecord, witness_hash: String },
}

fn doc_hash(doc: &GraphDoc) -> String {
    super::sha256_hex(doc.to_json().as_bytes())
}

impl CacheEntry {
    fn check(&self) -> std::result::Result<(), String> {
        let (doc, hash, status, verified) = match self {
            CacheEntry::Zar { record, witness_hash } => (&record.witness, witness_hash, record.status, record.verify()),
            CacheEntry::Ex { record, witness_hash } => (&record.witness, witness_hash, record.status, record.verify()),
        };
        if status != Status::Exact {
            return Err("only exact records are cached".into());
        }
        if &doc_hash(doc) != hash {
            return Err("witness hash mismatch".into());
        }
        verified.map_err(|e| e.to_string())
    }
}

type ExKey = (Vec<usize>, ForbiddenPattern);

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    zar: HashMap<ZarKey, ZarRecord>,
    ex: HashMap<ExKey, ExRecord>,
    warnings: Vec<String>,
}

impl Cache {
    /// Loads `path` if it exists; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let mut cache = Cache {
            path: path.as_ref().to_path_buf(),
            zar: HashMap::new(),
            ex: HashMap::new(),
            warnings: Vec::new(),
        };
        let file = match File::open(&cache.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let entry = serde_json::from_str::<CacheEntry>(&line)
                .map_err(|e| e.to_string())
                .and_then(|e| e.check().map(|()| e));
            match entry {
                Ok(CacheEntry::Zar { record, .. }) => {
                    cache.zar.entry(record.key.clone()).or_insert(record);
                }
                Ok(CacheEntry::Ex { record, .. }) => {
                    let key = (record.instance.part_sizes.clone(), record.instance.pattern);
                    cache.ex.entry(key).or_insert(record);
                }
                Err(why) => {
                    let msg = format!("{}:{}: skipping cache line: {why}", cache.path.display(), i + 1);
                    log::warn!("{msg}");
                    cache.warnings.push(msg);
                }
            }
        }
        Ok(cache)
    }

    /// The cache named by `TURAN_WORKBENCH_CACHE`, if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(p) if !p.is_empty() => Ok(Some(Self::open(p)?)),
            _ => Ok(None),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn len(&self) -> usize {
        self.zar.len() + self.ex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get_zar(&self, key: &ZarKey) -> Option<ZarRecord> {
        self.zar.get(key).cloned()
    }

    pub fn get_ex(&self, part_sizes: &[usize], pattern: &ForbiddenPattern) -> Option<ExRecord> {
        self.ex.get(&(part_sizes.to_vec(), *pattern)).cloned()
    }

    /// Appends an exact record. Records already present are left as they are.
    pub fn put_zar(&mut self, record: &ZarRecord) -> Result<bool> {
        if self.zar.contains_key(&record.key) {
            return Ok(false);
        }
        let entry = CacheEntry::Zar {
            record: record.clone(),
            witness_hash: doc_hash(&record.witness),
        };
        self.append(&entry)?;
        self.zar.insert(record.key.clone(), record.clone());
        Ok(true)
    }

    pub fn put_ex(&mut self, record: &ExRecord) -> Result<bool> {
        let key = (record.instance.part_sizes.clone(), record.instance.pattern);
        if self.ex.contains_key(&key) {
            return Ok(false);
        }
        let entry = CacheEntry::Ex {
            record: record.clone(),
            witness_hash: doc_hash(&record.witness),
        };
        self.append(&entry)?;
        self.ex.insert(key, record.clone());
        Ok(true)
    }

    fn append(&mut self, entry: &CacheEntry) -> Result<()> {
        if let Err(why) = entry.check() {
            return Err(crate::error::Error::InvalidParams(format!("refusing to cache record: {why}")));
        }
        let mut f = OpenOptions::new().create(true).read(true).append(true).open(&self.path)?;
        // A torn trailing line from another writer stays on its own line.
        let len = f.metadata()?.len();
        let mut line = String::new();
        if len > 0 {
            let mut last = [0u8; 1];
            f.seek(SeekFrom::Start(len - 1))?;
            f.read_exact(&mut last)?;
            if last[0] != b'\n' {
                line.push('\n');
            }
        }
        line.push_str(&serde_json::to_string(entry)?);
        line.push('\n');
        f.write_all(line.as_bytes())?;
        f.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::Budget;
    use crate::ex::{ex_exact, ExInstance};
    use crate::zar::z_exact;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let key = ZarKey::bipartite(3, 3, 2).unwrap();
        let rec = z_exact(&key, Budget::default()).unwrap();
        let ex = ex_exact(&ExInstance::new(
            vec![1, 1, 1],
            ForbiddenPattern::CompleteMultipartite { q: 3, t: 1 },
            Budget::default(),
        ))
        .unwrap();
        {
            let mut c = Cache::open(&path).unwrap();
            assert!(c.is_empty());
            assert!(c.put_zar(&rec).unwrap());
            assert!(!c.put_zar(&rec).unwrap());
            assert!(c.put_ex(&ex).unwrap());
        }
        // A record whose witness contains a C4, with a matching hash.
        let mut bad = z_exact(&ZarKey::bipartite(2, 2, 2).unwrap(), Budget::default()).unwrap();
        bad.witness.edges = vec![[0, 2], [0, 3], [1, 2], [1, 3]];
        bad.value = 4;
        let bad_line = serde_json::to_string(&CacheEntry::Zar {
            witness_hash: doc_hash(&bad.witness),
            record: bad,
        })
        .unwrap();
        let mut text = std::fs::read_to_string(&path).unwrap();
        text.push_str(&bad_line);
        text.push_str("\n{\"type\":\"zar\",\"rec");
        std::fs::write(&path, text).unwrap();

        let mut c = Cache::open(&path).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.warnings().len(), 2);
        assert_eq!(c.get_zar(&key).unwrap(), rec);
        assert!(c.get_zar(&ZarKey::bipartite(2, 2, 2).unwrap()).is_none());
        assert_eq!(c.get_ex(&[1, 1, 1], &ex.instance.pattern).unwrap().value, 2);

        // Appending after a torn line keeps the new record readable.
        let small = z_exact(&ZarKey::bipartite(2, 2, 2).unwrap(), Budget::default()).unwrap();
        assert!(c.put_zar(&small).unwrap());
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn rejects_inexact_records() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = Cache::open(dir.path().join("c.jsonl")).unwrap();
        let lower = crate::zar::z_lower_construction(7, 2, 0).unwrap();
        assert!(c.put_zar(&lower).is_err());
    }
}
