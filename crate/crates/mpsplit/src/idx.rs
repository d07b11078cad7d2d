//! Big-endian IDX files as distributed with MNIST.

use std::fs;
use std::path::{Path, PathBuf};

use mpsplit_core::{Dataset, Split};
use thiserror::Error;

pub const IMAGES_MAGIC: u32 = 0x0000_0803;
pub const LABELS_MAGIC: u32 = 0x0000_0801;

pub const TRAIN_IMAGES: &str = "train-images-idx3-ubyte";
pub const TRAIN_LABELS: &str = "train-labels-idx1-ubyte";
pub const TEST_IMAGES: &str = "t10k-images-idx3-ubyte";
pub const TEST_LABELS: &str = "t10k-labels-idx1-ubyte";

const NUM_CLASSES: usize = 10;

#[derive(Debug, Error)]
pub enum IdxError {
    #[error("{path}: bad magic at byte 0: expected {expected:#010x}, found {found:#010x}")]
    BadMagic {
        path: PathBuf,
        expected: u32,
        found: u32,
    },
    #[error("{path}: truncated at byte {offset}: needed {needed} bytes, file has {available}")]
    Truncated {
        path: PathBuf,
        offset: usize,
        needed: usize,
        available: usize,
    },
    #[error("count mismatch: {images} images vs {labels} labels (header bytes 4..8)")]
    CountMismatch { images: usize, labels: usize },
    #[error("{path}: label {label} at byte {offset} is not a digit")]
    BadLabel {
        path: PathBuf,
        offset: usize,
        label: u8,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Decoded image file: `count` images of `rows x cols` raw bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdxImages {
    pub count: usize,
    pub rows: usize,
    pub cols: usize,
    pub pixels: Vec<u8>,
}

fn read_u32(bytes: &[u8], offset: usize, path: &Path) -> Result<u32, IdxError> {
    bytes
        .get(offset..offset + 4)
        .map(|b| u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
        .ok_or_else(|| IdxError::Truncated {
            path: path.to_path_buf(),
            offset,
            needed: offset + 4,
            available: bytes.len(),
        })
}

fn check_magic(bytes: &[u8], expected: u32, path: &Path) -> Result<(), IdxError> {
    let found = read_u32(bytes, 0, path)?;
    if found != expected {
        return Err(IdxError::BadMagic {
            path: path.to_path_buf(),
            expected,
            found,
        });
    }
    Ok(())
}

fn payload<'a>(bytes: &'a [u8], offset: usize, len: usize, path: &Path) -> Result<&'a [u8], IdxError> {
    bytes.get(offset..offset + len).ok_or_else(|| IdxError::Truncated {
        path: path.to_path_buf(),
        offset: bytes.len().max(offset),
        needed: offset + len,
        available: bytes.len(),
    })
}

/// `path` is only used in error messages.
pub fn parse_images(bytes: &[u8], path: &Path) -> Result<IdxImages, IdxError> {
    check_magic(bytes, IMAGES_MAGIC, path)?;
    let count = read_u32(bytes, 4, path)? as usize;
    let rows = read_u32(bytes, 8, path)? as usize;
    let cols = read_u32(bytes, 12, path)? as usize;
    let pixels = payload(bytes, 16, count * rows * cols, path)?.to_vec();
    Ok(IdxImages {
        count,
        rows,
        cols,
        pixels,
    })
}

pub fn parse_labels(bytes: &[u8], path: &Path) -> Result<Vec<u8>, IdxError> {
    check_magic(bytes, LABELS_MAGIC, path)?;
    let count = read_u32(bytes, 4, path)? as usize;
    let labels = payload(bytes, 8, count, path)?;
    if let Some(i) = labels.iter().position(|&l| l as usize >= NUM_CLASSES) {
        return Err(IdxError::BadLabel {
            path: path.to_path_buf(),
            offset: 8 + i,
            label: labels[i],
        });
    }
    Ok(labels.to_vec())
}

fn read(path: &Path) -> Result<Vec<u8>, IdxError> {
    fs::read(path).map_err(|source| IdxError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads one image/label file pair, scaling pixels to `[0, 1]` by `1/255`.
pub fn load_mnist(images_path: &Path, labels_path: &Path, split: Split) -> Result<Dataset, IdxError> {
    let images = parse_images(&read(images_path)?, images_path)?;
    let labels = parse_labels(&read(labels_path)?, labels_path)?;
    if images.count != labels.len() {
        return Err(IdxError::CountMismatch {
            images: images.count,
            labels: labels.len(),
        });
    }
    let dim = images.rows * images.cols;
    let pixels = images.pixels.iter().map(|&p| f64::from(p) / 255.0).collect();
    Ok(Dataset::new(pixels, labels, dim, NUM_CLASSES, split)
        .expect("IDX shapes and labels were validated above"))
}

/// Train and test sets from a directory holding the four standard files.
pub fn load_mnist_dir(dir: &Path) -> Result<(Dataset, Dataset), IdxError> {
    let train = load_mnist(&dir.join(TRAIN_IMAGES), &dir.join(TRAIN_LABELS), Split::Train)?;
    let test = load_mnist(&dir.join(TEST_IMAGES), &dir.join(TEST_LABELS), Split::Test)?;
    Ok((train, test))
}

pub fn encode_images(images: &IdxImages) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 + images.pixels.len());
    for v in [IMAGES_MAGIC, images.count as u32, images.rows as u32, images.cols as u32] {
        out.extend_from_slice(&v.to_be_bytes());
    }
    out.extend_from_slice(&images.pixels);
    out
}

pub fn encode_labels(labels: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + labels.len());
    out.extend_from_slice(&LABELS_MAGIC.to_be_bytes());
    out.extend_from_slice(&(labels.len() as u32).to_be_bytes());
    out.extend_from_slice(labels);
    out
}
