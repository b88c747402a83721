//! Input resolution: `catalog:` URIs and file paths.

use std::sync::Arc;

use crate::manifest::RunManifest;
use crate::Failure;
use twistk_core::{catalog, io as core_io, FiniteGroup};
use twistk_topology::spaces::{self, LoadedSpace};

/// Loads a group from `catalog:<name>` or a JSON file path.
pub fn load_group(
    reference: &str,
    manifest: &mut RunManifest,
) -> Result<Arc<FiniteGroup>, Failure> {
    if let Some(name) = reference.strip_prefix("catalog:") {
        manifest.add_input(reference, reference.as_bytes());
        return catalog::by_name(name).map_err(Failure::from);
    }
    let text = std::fs::read_to_string(reference)
        .map_err(|e| Failure::input(format!("cannot read `{reference}`: {e}")))?;
    manifest.add_input(reference, text.as_bytes());
    core_io::parse_group_json(&text).map_err(Failure::from)
}

/// Loads a space from `catalog:<name>` or a JSON space file.
pub fn load_space(reference: &str, manifest: &mut RunManifest) -> Result<LoadedSpace, Failure> {
    if let Some(name) = reference.strip_prefix("catalog:") {
        manifest.add_input(reference, reference.as_bytes());
        let f2 = spaces::f2_ring_by_name(name)?;
        let integral = spaces::integral_space_by_name(name).ok();
        return Ok(LoadedSpace {
            name: name.to_string(),
            f2,
            integral,
        });
    }
    let text = std::fs::read_to_string(reference)
        .map_err(|e| Failure::input(format!("cannot read `{reference}`: {e}")))?;
    manifest.add_input(reference, text.as_bytes());
    spaces::parse_space_json(&text).map_err(Failure::from)
}

pub fn read_file(path: &std::path::Path, manifest: &mut RunManifest) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read `{}`: {e}", path.display())))?;
    manifest.add_input(path.display().to_string(), text.as_bytes());
    Ok(text)
}
