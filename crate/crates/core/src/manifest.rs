//! Run manifests: what was run, with which inputs, and digests of what it wrote.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub system: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub version: String,
    /// File name to hex SHA-256 of its contents.
    pub outputs: BTreeMap<String, String>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str, system: &str, seed: u64) -> Self {
        RunManifest {
            command: command.to_string(),
            system: system.to_string(),
            parameters: BTreeMap::new(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// Write `contents` to `path` and record its digest.
    pub fn write_output(&mut self, path: &Path, contents: &str) -> Result<()> {
        std::fs::write(path, contents)?;
        let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
        self.outputs.insert(name, digest(contents.as_bytes()));
        Ok(())
    }

    /// Output files whose current contents no longer match the recorded digest.
    pub fn stale_outputs(&self, dir: &Path) -> Result<Vec<String>> {
        let mut stale = Vec::new();
        for (name, want) in &self.outputs {
            let bytes = std::fs::read(dir.join(name))?;
            if &digest(&bytes) != want {
                stale.push(name.clone());
            }
        }
        Ok(stale)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digests_and_round_trip() {
        assert_eq!(digest(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        let dir = tempfile::tempdir().unwrap();
        let mut m = RunManifest::new("growth", "F", 1).param("radius", 2);
        m.write_output(&dir.path().join("g.csv"), "n,gamma_ball\n0,1\n").unwrap();
        assert!(m.stale_outputs(dir.path()).unwrap().is_empty());
        assert_eq!(RunManifest::from_json(&m.to_json()).unwrap(), m);
        std::fs::write(dir.path().join("g.csv"), "changed").unwrap();
        assert_eq!(m.stale_outputs(dir.path()).unwrap(), vec!["g.csv".to_string()]);
    }
}
