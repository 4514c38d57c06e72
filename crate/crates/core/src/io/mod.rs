//! Graph files, the result cache and run manifests.

mod cache;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::graph::PartitionedGraph;

pub use cache::{Cache, CacheEntry, CACHE_ENV};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn file_hash(path: impl AsRef<Path>) -> Result<String> {
    Ok(sha256_hex(&std::fs::read(path)?))
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<PartitionedGraph> {
    PartitionedGraph::from_json(&std::fs::read_to_string(path)?)
}

/// Writes the canonical document followed by a newline.
pub fn save_graph(g: &PartitionedGraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format!("{}\n", g.to_json()))?;
    Ok(())
}

/// Provenance sidecar for an artifact.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub parameters: serde_json::Value,
    pub input_hashes: BTreeMap<String, String>,
    pub output_hashes: BTreeMap<String, String>,
    pub wall_time_ms: u64,
    pub budget_counters: BTreeMap<String, u64>,
    pub seed: u64,
    pub threads: usize,
}

impl RunManifest {
    pub fn sidecar_path(artifact: impl AsRef<Path>) -> PathBuf {
        let mut p = artifact.as_ref().as_os_str().to_owned();
        p.push(".manifest.json");
        PathBuf::from(p)
    }

    pub fn add_input(&mut self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        self.input_hashes.insert(path.display().to_string(), file_hash(path)?);
        Ok(())
    }

    pub fn add_output(&mut self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        self.output_hashes.insert(path.display().to_string(), file_hash(path)?);
        Ok(())
    }

    /// Writes the manifest next to `artifact` and returns its path.
    pub fn write_for(&self, artifact: impl AsRef<Path>) -> Result<PathBuf> {
        let path = Self::sidecar_path(artifact);
        std::fs::write(&path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(path)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}
