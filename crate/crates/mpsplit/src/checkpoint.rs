//! Network checkpoints: a `manifest.json` plus one little-endian `f64` blob
//! per layer holding the row-major weights followed by the bias.

use std::fs;
use std::path::{Path, PathBuf};

use mpsplit_core::{Activation, Layer, Matrix, Network};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;
pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("{path}: unsupported checkpoint format version {found:?} (expected {FORMAT_VERSION})")]
    Version { path: PathBuf, found: Option<u64> },
    #[error("{path}: malformed manifest: {source}")]
    Manifest {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("layer {layer}: input width {found} does not match previous output width {expected}")]
    Chain {
        layer: usize,
        expected: usize,
        found: usize,
    },
    #[error("manifest dims {manifest:?} disagree with layer shapes {layers:?}")]
    Dims {
        manifest: Vec<usize>,
        layers: Vec<usize>,
    },
    #[error("{path}: truncated at byte {offset}: expected {expected} bytes")]
    Truncated {
        path: PathBuf,
        offset: usize,
        expected: usize,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid network: {0}")]
    Network(#[from] mpsplit_core::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerEntry {
    pub file: String,
    pub out_dim: usize,
    pub in_dim: usize,
    pub activation: Activation,
    pub bias: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub dims: Vec<usize>,
    pub seed: Option<u64>,
    pub layers: Vec<LayerEntry>,
}

impl Manifest {
    pub fn describe(net: &Network, seed: Option<u64>) -> Self {
        let layers = net
            .layers()
            .iter()
            .enumerate()
            .map(|(k, l)| LayerEntry {
                file: format!("layer_{k:03}.bin"),
                out_dim: l.out_dim(),
                in_dim: l.in_dim(),
                activation: l.activation,
                bias: l.bias.is_some(),
            })
            .collect();
        Self {
            format_version: FORMAT_VERSION,
            dims: net.signature(),
            seed,
            layers,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CheckpointError + '_ {
    move |source| CheckpointError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes `net` into directory `dir`, creating it if needed.
pub fn save_checkpoint(net: &Network, dir: &Path, seed: Option<u64>) -> Result<Manifest, CheckpointError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let manifest = Manifest::describe(net, seed);
    for (layer, entry) in net.layers().iter().zip(&manifest.layers) {
        let bias = layer.bias.as_deref().unwrap_or(&[]);
        let mut blob = Vec::with_capacity(8 * (layer.weights.as_slice().len() + bias.len()));
        for v in layer.weights.as_slice().iter().chain(bias) {
            blob.extend_from_slice(&v.to_le_bytes());
        }
        let path = dir.join(&entry.file);
        fs::write(&path, blob).map_err(io_err(&path))?;
    }
    let path = dir.join(MANIFEST);
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, json).map_err(io_err(&path))?;
    Ok(manifest)
}

pub fn read_manifest(dir: &Path) -> Result<Manifest, CheckpointError> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    let version = serde_json::from_str::<serde_json::Value>(&text)
        .ok()
        .and_then(|v| v.get("format_version").and_then(serde_json::Value::as_u64));
    if version != Some(u64::from(FORMAT_VERSION)) {
        return Err(CheckpointError::Version { path, found: version });
    }
    serde_json::from_str(&text).map_err(|source| CheckpointError::Manifest { path, source })
}

fn read_layer(dir: &Path, entry: &LayerEntry) -> Result<Layer, CheckpointError> {
    let path = dir.join(&entry.file);
    let bytes = fs::read(&path).map_err(io_err(&path))?;
    let n_weights = entry.out_dim * entry.in_dim;
    let n_bias = if entry.bias { entry.out_dim } else { 0 };
    let expected = 8 * (n_weights + n_bias);
    if bytes.len() != expected {
        return Err(CheckpointError::Truncated {
            path,
            offset: bytes.len().min(expected),
            expected,
        });
    }
    let mut values = bytes
        .chunks_exact(8)
        .map(|b| f64::from_le_bytes(b.try_into().expect("8-byte chunk")));
    let weights: Vec<f64> = values.by_ref().take(n_weights).collect();
    let bias = entry.bias.then(|| values.collect::<Vec<f64>>());
    let weights = Matrix::new(entry.out_dim, entry.in_dim, weights)?;
    Ok(Layer::new(weights, bias, entry.activation)?)
}

pub fn load_checkpoint(dir: &Path) -> Result<(Network, Manifest), CheckpointError> {
    let manifest = read_manifest(dir)?;
    for (k, pair) in manifest.layers.windows(2).enumerate() {
        if pair[1].in_dim != pair[0].out_dim {
            return Err(CheckpointError::Chain {
                layer: k + 1,
                expected: pair[0].out_dim,
                found: pair[1].in_dim,
            });
        }
    }
    let layers = manifest
        .layers
        .iter()
        .map(|entry| read_layer(dir, entry))
        .collect::<Result<Vec<_>, _>>()?;
    let net = Network::new(layers)?;
    if net.signature() != manifest.dims {
        return Err(CheckpointError::Dims {
            manifest: manifest.dims.clone(),
            layers: net.signature(),
        });
    }
    Ok((net, manifest))
}
