//! Run manifests: every output directory records what produced it.

use std::path::Path;

use serde::Serialize;

use crate::error::Result;

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub input: String,
    pub graph_fingerprint: String,
    pub command: String,
    pub parameters: serde_json::Value,
    pub tool_version: String,
    pub duration_seconds: f64,
}

impl RunManifest {
    pub fn new(
        input: &str,
        graph_fingerprint: &str,
        command: &str,
        parameters: serde_json::Value,
    ) -> Self {
        RunManifest {
            input: input.to_string(),
            graph_fingerprint: graph_fingerprint.to_string(),
            command: command.to_string(),
            parameters,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            duration_seconds: 0.0,
        }
    }

    pub fn write_to_dir(&self, dir: &Path) -> Result<()> {
        let body = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(dir.join("manifest.json"), body + "\n")?;
        Ok(())
    }
}
