//! SVD-based layer splitting.
//!
//! A layer `y = Wx + b` with `W = UΣVᵀ` is replaced by the pair
//!
//! ```text
//! h = (√Σ_r V_rᵀ) x            (r x in, no bias, no activation)
//! y = (U_r √Σ_r) h + b         (out x r, original bias and activation)
//! ```
//!
//! keeping the `r` largest singular triplets. The number of triplets kept is
//! decided from the layer's spectrum: every eigenvalue above the fitted edge
//! is a spike and is kept, and a fraction of the bulk ("small") values is
//! dropped from the bottom.

use alloc::format;
use alloc::vec::Vec;

use faer::Accum;

use crate::bema::{BemaResult, FitReport};
use crate::error::{Error, Result};
use crate::math::{floor_tolerant, sqrt};
use crate::matrix::{gemm, Matrix};
use crate::spectral::Esd;

/// Full SVD `W = U Σ Vᵀ` with `U` square `out x out` and `Vᵀ` square
/// `in x in`. Singular values are sorted nonincreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    pub u: Matrix,
    pub singular_values: Vec<f64>,
    pub v_t: Matrix,
}

impl SvdFactors {
    /// `U Σ Vᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        let (rows, cols) = (self.u.rows(), self.v_t.cols());
        let sigma = Matrix::from_diagonal(rows, cols, &self.singular_values);
        let us = self.u.matmul(&sigma).expect("square U matches Σ rows");
        us.matmul(&self.v_t).expect("Σ cols match Vᵀ")
    }
}

/// Full singular value decomposition of `w`.
pub fn decompose(w: &Matrix) -> Result<SvdFactors> {
    let svd = w
        .view()
        .svd()
        .map_err(|e| Error::Numerical(format!("SVD failed to converge: {e:?}")))?;
    let s = svd.S().column_vector();
    let singular_values: Vec<f64> = (0..s.nrows()).map(|i| s[i].max(0.0)).collect();
    Ok(SvdFactors {
        u: Matrix::from_faer(svd.U()),
        singular_values,
        v_t: Matrix::from_faer(svd.V().transpose()),
    })
}

/// Outcome of analysing one layer for a split.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SplitDecision {
    pub rank_kept: usize,
    /// Eigenvalues at or below the fitted edge.
    pub n_small: usize,
    pub n_spikes: usize,
    pub removal_fraction: f64,
    /// `out·in + out`.
    pub params_before: usize,
    /// `r·in + out·r + out`.
    pub params_after: usize,
    pub fit: FitReport,
    pub accepted: bool,
}

impl SplitDecision {
    pub fn dropped(&self) -> usize {
        self.n_small + self.n_spikes - self.rank_kept
    }
}

/// Parameters of an `out x in` dense layer including its bias.
pub fn dense_params(out_dim: usize, in_dim: usize) -> usize {
    out_dim * in_dim + out_dim
}

/// Parameters after splitting an `out x in` layer at rank `r` (bias kept on
/// the output factor only).
pub fn split_params(out_dim: usize, in_dim: usize, rank: usize) -> usize {
    rank * in_dim + out_dim * rank + out_dim
}

/// Decides how many singular values of `w` to keep. The layer is split only
/// if the bulk passed the fit test and the two factors are strictly smaller
/// than the original layer.
pub fn plan_split(
    w: &Matrix,
    esd: &Esd,
    bema: &BemaResult,
    fit: &FitReport,
    removal_fraction: f64,
) -> Result<SplitDecision> {
    if !(0.0..1.0).contains(&removal_fraction) {
        return Err(Error::domain(
            "removal_fraction",
            removal_fraction,
            "0 <= removal_fraction < 1",
        ));
    }
    let m = esd.len();
    if m != w.rows().min(w.cols()) {
        return Err(Error::DimensionMismatch {
            context: "spectrum size vs layer min dimension",
            expected: w.rows().min(w.cols()),
            found: m,
        });
    }
    let eig = esd.eigenvalues();
    let n_small = eig.partition_point(|&v| v <= bema.lambda_plus);
    let n_spikes = m - n_small;
    let dropped = floor_tolerant(removal_fraction * n_small as f64).min(n_small);
    let rank_kept = m - dropped;
    let (out_dim, in_dim) = (w.rows(), w.cols());
    let params_before = dense_params(out_dim, in_dim);
    let params_after = split_params(out_dim, in_dim, rank_kept);
    let accepted = fit.passed && rank_kept > 0 && params_after < params_before;
    Ok(SplitDecision {
        rank_kept,
        n_small,
        n_spikes,
        removal_fraction,
        params_before,
        params_after,
        fit: *fit,
        accepted,
    })
}

/// The two factor layers replacing one dense layer.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitResult {
    /// `√Σ_r V_rᵀ`, `r x in`, applied first.
    pub w_first: Matrix,
    /// `U_r √Σ_r`, `out x r`, applied second.
    pub w_second: Matrix,
    /// The original bias, attached to `w_second`.
    pub bias: Vec<f64>,
}

impl SplitResult {
    pub fn rank(&self) -> usize {
        self.w_first.rows()
    }

    /// `w_second · w_first`, the rank-`r` approximation of the layer.
    pub fn product(&self) -> Matrix {
        self.w_second
            .matmul(&self.w_first)
            .expect("factor shapes chain by construction")
    }
}

/// Splits `w` according to an accepted decision.
pub fn split(w: &Matrix, bias: &[f64], decision: &SplitDecision) -> Result<SplitResult> {
    if !decision.accepted {
        return Err(Error::Precondition("split requires an accepted decision"));
    }
    split_at_rank(w, bias, decision.rank_kept)
}

/// Rank-`r` split of `w` regardless of any fit test.
pub fn split_at_rank(w: &Matrix, bias: &[f64], rank: usize) -> Result<SplitResult> {
    let (out_dim, in_dim) = (w.rows(), w.cols());
    let full = out_dim.min(in_dim);
    if rank == 0 || rank > full {
        return Err(Error::InvalidArgument(format!(
            "split rank must be in 1..={full}, got {rank}"
        )));
    }
    if bias.len() != out_dim {
        return Err(Error::DimensionMismatch {
            context: "bias length vs layer output dimension",
            expected: out_dim,
            found: bias.len(),
        });
    }
    let svd = w
        .view()
        .thin_svd()
        .map_err(|e| Error::Numerical(format!("SVD failed to converge: {e:?}")))?;
    let (u, s, v) = (svd.U(), svd.S().column_vector(), svd.V());
    let root: Vec<f64> = (0..rank).map(|i| sqrt(s[i].max(0.0))).collect();
    let w_first = Matrix::from_fn(rank, in_dim, |i, j| root[i] * v[(j, i)]);
    let w_second = Matrix::from_fn(out_dim, rank, |i, j| u[(i, j)] * root[j]);
    Ok(SplitResult {
        w_first,
        w_second,
        bias: bias.to_vec(),
    })
}

/// `‖W − w_second·w_first‖_F²`.
pub fn truncation_error_sq(w: &Matrix, result: &SplitResult) -> f64 {
    let mut diff = w.clone();
    gemm(
        diff.view_mut(),
        Accum::Add,
        result.w_second.view(),
        result.w_first.view(),
        -1.0,
    );
    diff.frobenius_norm_sq()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bema::{BemaConfig, FitReport};
    use alloc::vec;

    fn fit(passed: bool) -> FitReport {
        FitReport {
            s_statistic: if passed { 0.001 } else { 0.5 },
            gamma: 0.01,
            i_low: 1,
            i_high: 2,
            passed,
        }
    }

    fn edge(lambda_plus: f64) -> BemaResult {
        BemaResult {
            sigma_hat_sq: 1.0,
            lambda_plus,
            config: BemaConfig::default(),
            m: 1,
            tw_quantile: 0.0,
        }
    }

    #[test]
    fn diagonal_singular_values() {
        let f = decompose(&Matrix::from_diagonal(3, 3, &[3.0, 2.0, 1.0])).unwrap();
        for (a, b) in f.singular_values.iter().zip([3.0, 2.0, 1.0]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn orthogonal_singular_values_are_one() {
        let (c, s) = (0.6, 0.8);
        let q = Matrix::new(3, 3, vec![c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let f = decompose(&q).unwrap();
        assert!(f.singular_values.iter().all(|v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn rectangular_reconstruction() {
        let w = Matrix::from_fn(7, 4, |i, j| ((i * 4 + j) as f64 * 0.37).sin());
        let f = decompose(&w).unwrap();
        assert_eq!((f.u.rows(), f.u.cols()), (7, 7));
        assert_eq!((f.v_t.rows(), f.v_t.cols()), (4, 4));
        let err = w.sub(&f.reconstruct()).unwrap().frobenius_norm();
        assert!(err <= 1e-12 * w.frobenius_norm());
    }

    #[test]
    fn paper_truncation_arithmetic() {
        // 784 x 1000 layer kept at rank 20, ignoring the bias.
        let (out_dim, in_dim, r) = (1000, 784, 20);
        assert_eq!(out_dim * in_dim, 784_000);
        assert_eq!(r * in_dim, 15_680);
        assert_eq!(out_dim * r, 20_000);
        assert_eq!(split_params(out_dim, in_dim, r) - out_dim, 35_680);
    }

    #[test]
    fn failed_fit_is_never_accepted() {
        let w = Matrix::from_fn(40, 30, |i, j| ((i + 2 * j) as f64).cos());
        let esd = crate::spectral::symmetrized_spectrum(&w).unwrap();
        let d = plan_split(&w, &esd, &edge(1e9), &fit(false), 0.9).unwrap();
        assert!(!d.accepted);
        let d = plan_split(&w, &esd, &edge(1e9), &fit(true), 0.9).unwrap();
        assert!(d.accepted);
        assert_eq!(d.n_small, 30);
        assert_eq!(d.rank_kept, 30 - 27);
    }

    #[test]
    fn zero_removal_full_rank_square_is_rejected() {
        let w = Matrix::from_fn(12, 12, |i, j| ((i * 12 + j) as f64).sin());
        let esd = crate::spectral::symmetrized_spectrum(&w).unwrap();
        let d = plan_split(&w, &esd, &edge(1e9), &fit(true), 0.0).unwrap();
        assert_eq!(d.rank_kept, 12);
        assert!(d.params_after > d.params_before);
        assert!(!d.accepted);
    }

    #[test]
    fn split_diagonal_truncates() {
        let w = Matrix::from_diagonal(3, 3, &[3.0, 2.0, 1.0]);
        let s = split_at_rank(&w, &[0.0; 3], 2).unwrap();
        let p = s.product();
        let expect = Matrix::from_diagonal(3, 3, &[3.0, 2.0, 0.0]);
        assert!(p.sub(&expect).unwrap().frobenius_norm() < 1e-12);
        assert_eq!((s.w_first.rows(), s.w_first.cols()), (2, 3));
        assert_eq!((s.w_second.rows(), s.w_second.cols()), (3, 2));
    }

    #[test]
    fn split_requires_acceptance_and_valid_rank() {
        let w = Matrix::identity(4);
        let esd = crate::spectral::symmetrized_spectrum(&w).unwrap();
        let d = plan_split(&w, &esd, &edge(1e9), &fit(false), 0.5).unwrap();
        assert!(split(&w, &[0.0; 4], &d).is_err());
        assert!(split_at_rank(&w, &[0.0; 4], 0).is_err());
        assert!(split_at_rank(&w, &[0.0; 4], 5).is_err());
        assert!(split_at_rank(&w, &[0.0; 3], 2).is_err());
    }

    #[test]
    fn removal_fraction_domain() {
        let w = Matrix::identity(4);
        let esd = crate::spectral::symmetrized_spectrum(&w).unwrap();
        assert!(plan_split(&w, &esd, &edge(1.0), &fit(true), 1.0).is_err());
        assert!(plan_split(&w, &esd, &edge(1.0), &fit(true), -0.1).is_err());
    }
}
