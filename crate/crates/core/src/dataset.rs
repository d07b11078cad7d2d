use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Split {
    Train,
    Test,
}

/// Labelled samples stored as one flat row-major `len x dim` buffer.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    images: Vec<f64>,
    labels: Vec<u8>,
    dim: usize,
    num_classes: usize,
    split: Split,
}

impl Dataset {
    pub fn new(
        images: Vec<f64>,
        labels: Vec<u8>,
        dim: usize,
        num_classes: usize,
        split: Split,
    ) -> Result<Self> {
        if dim == 0 || images.len() != labels.len() * dim {
            return Err(Error::DimensionMismatch {
                context: "dataset images vs labels",
                expected: labels.len() * dim,
                found: images.len(),
            });
        }
        if let Some(&bad) = labels.iter().find(|&&l| l as usize >= num_classes) {
            return Err(Error::InvalidArgument(alloc::format!(
                "label {bad} outside 0..{num_classes}"
            )));
        }
        Ok(Self {
            images,
            labels,
            dim,
            num_classes,
            split,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn split(&self) -> Split {
        self.split
    }

    pub fn image(&self, i: usize) -> &[f64] {
        &self.images[i * self.dim..(i + 1) * self.dim]
    }

    pub fn images(&self) -> &[f64] {
        &self.images
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// First `n` samples (or all of them).
    pub fn head(&self, n: usize) -> Dataset {
        let n = n.min(self.len());
        Dataset {
            images: self.images[..n * self.dim].to_vec(),
            labels: self.labels[..n].to_vec(),
            dim: self.dim,
            num_classes: self.num_classes,
            split: self.split,
        }
    }
}
