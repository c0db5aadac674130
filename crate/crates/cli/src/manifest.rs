//! Per-run manifest: what was run, with which settings and inputs, and
//! what it produced.

use std::path::PathBuf;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct InputRecord {
    pub source: String,
    pub sha256: String,
}

impl InputRecord {
    pub fn new(source: impl Into<String>, bytes: &[u8]) -> Self {
        Self {
            source: source.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub mode: String,
    pub format: String,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub tol: f64,
    pub condition_threshold: f64,
    pub root_residual: f64,
    pub zero_radius_slack: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool_version: &'static str,
    pub command_line: Vec<String>,
    pub config: RunConfig,
    pub tolerances: Tolerances,
    pub inputs: Vec<InputRecord>,
    pub outputs: Vec<PathBuf>,
    pub wall_time_seconds: f64,
    pub exit_code: u8,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifests serialize");
        s.push('\n');
        s
    }
}
