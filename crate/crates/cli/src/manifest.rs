use serde::Serialize;
use sha2::{Digest, Sha256};

/// Record of one run: enough to re-run it and check that outputs match.
/// Deliberately free of timestamps and absolute paths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub version: String,
    pub outputs: Vec<OutputChecksum>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputChecksum {
    pub file: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl RunManifest {
    pub fn new(command: &str, parameters: serde_json::Value, artifacts: &[(String, Vec<u8>)]) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: artifacts
                .iter()
                .map(|(file, bytes)| OutputChecksum { file: file.clone(), sha256: sha256_hex(bytes) })
                .collect(),
        }
    }
}
