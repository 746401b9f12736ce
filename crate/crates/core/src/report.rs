//! Run manifests embedded in every emitted artifact.

use serde::Serialize;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
    pub tool_version: String,
    /// Only recorded on request, so that reruns stay byte-identical.
    pub wall_time_ms: Option<u128>,
    pub output: Option<String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            inputs: Vec::new(),
            seed: None,
            tool_version: TOOL_VERSION.to_string(),
            wall_time_ms: None,
            output: None,
        }
    }

    pub fn input(mut self, path: impl Into<String>) -> Self {
        self.inputs.push(path.into());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn output(mut self, path: Option<String>) -> Self {
        self.output = path;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub manifest: RunManifest,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(manifest: RunManifest, body: T) -> Self {
        Envelope { manifest, body }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
