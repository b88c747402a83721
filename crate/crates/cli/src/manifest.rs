//! Run manifests: enough provenance to make reruns byte-identical.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub matrix_tol: f64,
    pub snap_tol: f64,
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl RunManifest {
    pub fn new(seed: u64, matrix_tol: f64, snap_tol: f64) -> Self {
        RunManifest {
            tool: "twistk",
            version: env!("CARGO_PKG_VERSION"),
            command: std::env::args().collect(),
            inputs: Vec::new(),
            seed,
            matrix_tol,
            snap_tol,
        }
    }

    pub fn add_input(&mut self, name: impl Into<String>, content: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(content);
        self.inputs.push(InputDigest {
            name: name.into(),
            sha256: format!("{:x}", hasher.finalize()),
        });
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} v{}\n", self.tool, self.version));
        out.push_str(&format!("# command: {}\n", self.command.join(" ")));
        for i in &self.inputs {
            out.push_str(&format!("# input {}: sha256:{}\n", i.name, i.sha256));
        }
        out.push_str(&format!(
            "# seed: {}  matrix-tol: {:e}  snap-tol: {:e}\n",
            self.seed, self.matrix_tol, self.snap_tol
        ));
        out
    }
}
