//! Spectra of symmetrized weight matrices.
//!
//! For an `R x C` matrix `W` let `N = max(R, C)` and `M = min(R, C)`. The
//! spectrum analysed everywhere in this crate is that of the `M x M` Gram
//! matrix scaled by `1/N` (`WᵀW/N` when `R ≥ C`, `WWᵀ/N` otherwise), with
//! aspect ratio `c = M/N`. The larger Gram matrix only adds `N − M`
//! structural zeros.

use alloc::format;
use alloc::vec::Vec;

use faer::{Accum, Mat, Side};

use crate::error::{Error, Result};
use crate::matrix::{gemm, Matrix};

/// Eigenvalues closer to zero than this (relative to the largest one, and
/// never less than `1e-10` absolute) are rounding noise and clamp to zero.
const NEGATIVE_TOLERANCE: f64 = 1e-10;

/// Empirical spectral distribution: sorted eigenvalues of `(1/N)·Gram(W)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Esd {
    eigenvalues: Vec<f64>,
    n_normalizer: usize,
    aspect_c: f64,
}

impl Esd {
    /// Builds an ESD from raw eigenvalues (any order). Values slightly below
    /// zero are clamped; anything more negative is an error.
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>, n_normalizer: usize) -> Result<Self> {
        let m = eigenvalues.len();
        if m == 0 {
            return Err(Error::InvalidArgument("empty spectrum".into()));
        }
        if n_normalizer < m {
            return Err(Error::InvalidArgument(format!(
                "normalizer N = {n_normalizer} is smaller than the spectrum size {m}"
            )));
        }
        if eigenvalues.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numerical("non-finite eigenvalue".into()));
        }
        eigenvalues.sort_by(f64::total_cmp);
        let top = eigenvalues[m - 1].abs();
        let floor = -NEGATIVE_TOLERANCE * top.max(1.0);
        for v in eigenvalues.iter_mut() {
            if *v < 0.0 {
                if *v < floor {
                    return Err(Error::Numerical(format!(
                        "negative eigenvalue {v:e} in a Gram spectrum"
                    )));
                }
                *v = 0.0;
            }
        }
        Ok(Self {
            eigenvalues,
            n_normalizer,
            aspect_c: m as f64 / n_normalizer as f64,
        })
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Number of eigenvalues, `M`.
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// The `N` in `(1/N)WᵀW`.
    pub fn n_normalizer(&self) -> usize {
        self.n_normalizer
    }

    pub fn aspect_c(&self) -> f64 {
        self.aspect_c
    }

    /// `#{λ ≤ a} / M`, a right-continuous step function.
    pub fn empirical_cdf(&self, a: f64) -> f64 {
        let count = self.eigenvalues.partition_point(|&v| v <= a);
        count as f64 / self.len() as f64
    }

    /// Same spectrum with every eigenvalue multiplied by `t`.
    pub fn scaled(&self, t: f64) -> Esd {
        Esd {
            eigenvalues: self.eigenvalues.iter().map(|v| v * t).collect(),
            n_normalizer: self.n_normalizer,
            aspect_c: self.aspect_c,
        }
    }
}

/// Eigenvalues of the smaller Gram matrix of `w`, scaled by `1/max(R, C)`.
pub fn symmetrized_spectrum(w: &Matrix) -> Result<Esd> {
    let (rows, cols) = (w.rows(), w.cols());
    let n = rows.max(cols);
    let m = rows.min(cols);
    let view = w.view();
    let mut gram = Mat::<f64>::zeros(m, m);
    let scale = 1.0 / n as f64;
    if rows >= cols {
        gemm(gram.as_mut(), Accum::Replace, view.transpose(), view, scale);
    } else {
        gemm(gram.as_mut(), Accum::Replace, view, view.transpose(), scale);
    }
    let eigenvalues = gram
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Numerical(format!("symmetric eigensolver failed: {e:?}")))?;
    Esd::from_eigenvalues(eigenvalues, n)
}
