use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

/// One named input that went into a run, with its content digest.
#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}

/// Record of a single invocation. The config digest folds the command line
/// and every input digest together, so equal manifests imply equal outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_digest: String,
    pub seed: Option<u64>,
    pub version: String,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub output_paths: Vec<String>,
}

fn now_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

pub struct ManifestBuilder {
    command: String,
    inputs: Vec<InputDigest>,
    seed: Option<u64>,
    started_unix_ms: u128,
}

impl ManifestBuilder {
    pub fn new(command: String) -> ManifestBuilder {
        ManifestBuilder {
            command,
            inputs: Vec::new(),
            seed: None,
            started_unix_ms: now_ms(),
        }
    }

    pub fn add_input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push(InputDigest {
            name: name.to_string(),
            sha256: digest_bytes(bytes),
        });
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.seed = Some(seed);
    }

    pub fn finish(self, output_paths: Vec<String>) -> RunManifest {
        let mut hasher = Sha256::new();
        hasher.update(self.command.as_bytes());
        for input in &self.inputs {
            hasher.update(input.name.as_bytes());
            hasher.update(input.sha256.as_bytes());
        }
        if let Some(seed) = self.seed {
            hasher.update(seed.to_le_bytes());
        }
        RunManifest {
            command: self.command,
            config_digest: format!("{:x}", hasher.finalize()),
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            started_unix_ms: self.started_unix_ms,
            finished_unix_ms: now_ms(),
            output_paths,
        }
    }
}
