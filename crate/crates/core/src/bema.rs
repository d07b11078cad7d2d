//! Bulk eigenvalue matching (BEMA) and the bulk goodness-of-fit test.
//!
//! BEMA fits the noise variance `σ̂²` by least squares between the middle
//! order statistics of the spectrum and the matching quantiles of a unit
//! variance Marchenko–Pastur law:
//!
//! ```text
//! σ̂² = Σ_k q_k λ_k / Σ_k q_k²,   ⌈αM⌉ ≤ k ≤ ⌊(1 − α)M⌋,   q_k = F⁻¹_MP(1, c)(k/M)
//! ```
//!
//! and places the edge a Tracy–Widom quantile above the fitted bulk:
//!
//! ```text
//! λ+ = σ̂² [ (1 + √c)² + t_β · N⁻¹ (√N + √M)(1/√N + 1/√M)^{1/3} ]
//! ```
//!
//! For a square matrix the scale term is exactly `2^{4/3} N^{-2/3}`. `t_β`
//! is the Tracy–Widom quantile at probability `β`, so a larger `β` raises the
//! edge and makes it more likely to sit above every pure-noise eigenvalue.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::{cbrt, ceil_tolerant, floor_tolerant, sqrt};
use crate::mp::MpParams;
use crate::spectral::Esd;
use crate::tw::TwQuantileTable;

/// Smallest spectrum BEMA accepts.
pub const MIN_EIGENVALUES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "RawBemaConfig"))]
pub struct BemaConfig {
    alpha: f64,
    beta: f64,
}

impl BemaConfig {
    /// `alpha ∈ (0, 1/2)` trims both tails of the spectrum; `beta ∈ (0, 1)`
    /// is the edge confidence.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 0.5) {
            return Err(Error::domain("alpha", alpha, "0 < alpha < 0.5"));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::domain("beta", beta, "0 < beta < 1"));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Inclusive 1-based index window `[⌈αM⌉, ⌊(1−α)M⌋]`, or `None` when it
    /// is empty.
    pub fn window(&self, m: usize) -> Option<(usize, usize)> {
        let lo = ceil_tolerant(self.alpha * m as f64).max(1);
        let hi = floor_tolerant((1.0 - self.alpha) * m as f64).min(m);
        (lo <= hi).then_some((lo, hi))
    }
}

impl Default for BemaConfig {
    fn default() -> Self {
        Self {
            alpha: 0.25,
            beta: 0.5,
        }
    }
}

#[cfg(feature = "serde")]
#[derive(serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawBemaConfig {
    alpha: f64,
    beta: f64,
}

#[cfg(feature = "serde")]
impl Default for RawBemaConfig {
    fn default() -> Self {
        let d = BemaConfig::default();
        Self {
            alpha: d.alpha,
            beta: d.beta,
        }
    }
}

#[cfg(feature = "serde")]
impl TryFrom<RawBemaConfig> for BemaConfig {
    type Error = Error;

    fn try_from(raw: RawBemaConfig) -> Result<Self> {
        Self::new(raw.alpha, raw.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BemaResult {
    pub sigma_hat_sq: f64,
    pub lambda_plus: f64,
    pub config: BemaConfig,
    /// Number of order statistics in the fitting window.
    pub m: usize,
    /// The Tracy–Widom quantile that was used for the edge.
    pub tw_quantile: f64,
}

impl BemaResult {
    /// The fitted law `MP(σ̂², c)` for a spectrum with ratio `c`.
    pub fn fitted_law(&self, c: f64) -> Result<MpParams> {
        MpParams::new(self.sigma_hat_sq, c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FitReport {
    pub s_statistic: f64,
    pub gamma: f64,
    pub i_low: usize,
    pub i_high: usize,
    pub passed: bool,
}

/// `t_{N,M}`: the Tracy–Widom scale of the largest eigenvalue of `WᵀW/N`
/// for unit-variance noise.
pub fn edge_fluctuation_scale(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    let (sn, sm) = (sqrt(n), sqrt(m));
    (sn + sm) * cbrt(1.0 / sn + 1.0 / sm) / n
}

/// Fits `σ̂²` and `λ+` to `esd` with the built-in Tracy–Widom table.
pub fn bema_fit(esd: &Esd, config: BemaConfig) -> Result<BemaResult> {
    bema_fit_with_table(esd, config, &TwQuantileTable::beta1())
}

pub fn bema_fit_with_table(
    esd: &Esd,
    config: BemaConfig,
    table: &TwQuantileTable<'_>,
) -> Result<BemaResult> {
    let m = esd.len();
    if m < MIN_EIGENVALUES {
        return Err(Error::InvalidArgument(alloc::format!(
            "BEMA needs at least {MIN_EIGENVALUES} eigenvalues, got {m}"
        )));
    }
    let (lo, hi) = config
        .window(m)
        .ok_or(Error::Precondition("empty BEMA window for this alpha"))?;
    let c = esd.aspect_c();
    let unit = MpParams::new(1.0, c)?;
    let eig = esd.eigenvalues();

    let mut num = 0.0;
    let mut den = 0.0;
    for k in lo..=hi {
        let q = unit.quantile(k as f64 / m as f64)?;
        num += q * eig[k - 1];
        den += q * q;
    }
    if !(num > 0.0) || !(den > 0.0) {
        return Err(Error::DegenerateSpectrum);
    }
    let sigma_hat_sq = num / den;
    let t = table.quantile(config.beta())?;
    let root_c = sqrt(c);
    let bulk_edge = (1.0 + root_c) * (1.0 + root_c);
    let lambda_plus =
        sigma_hat_sq * (bulk_edge + t * edge_fluctuation_scale(esd.n_normalizer(), m));
    if !(lambda_plus > 0.0 && lambda_plus.is_finite()) {
        return Err(Error::Numerical(alloc::format!(
            "non-positive edge estimate {lambda_plus}"
        )));
    }
    Ok(BemaResult {
        sigma_hat_sq,
        lambda_plus,
        config,
        m: hi - lo + 1,
        tw_quantile: t,
    })
}

/// Number of eigenvalues strictly above the fitted edge.
pub fn spike_count(esd: &Esd, result: &BemaResult) -> usize {
    let eig = esd.eigenvalues();
    eig.len() - eig.partition_point(|&v| v <= result.lambda_plus)
}

/// Kolmogorov-style distance between the empirical spectral CDF and the
/// fitted MP CDF, restricted to the BEMA bulk window. Each order statistic
/// `λ_i` contributes `|i/M − F_MP(λ_i)|`; the claim that the bulk follows the
/// fitted law is rejected when the largest such gap exceeds `gamma`.
pub fn goodness_of_fit(esd: &Esd, result: &BemaResult, gamma: f64) -> Result<FitReport> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::domain("gamma", gamma, "0 <= gamma < 1"));
    }
    let m = esd.len();
    let (i_low, i_high) = result
        .config
        .window(m)
        .ok_or(Error::Precondition("empty goodness-of-fit window"))?;
    if i_low >= i_high {
        return Err(Error::Precondition("goodness-of-fit window needs two points"));
    }
    let law = result.fitted_law(esd.aspect_c())?;
    let eig = esd.eigenvalues();
    let s_statistic = (i_low..=i_high)
        .map(|i| (i as f64 / m as f64 - law.cdf(eig[i - 1])).abs())
        .fold(0.0, f64::max);
    Ok(FitReport {
        s_statistic,
        gamma,
        i_low,
        i_high,
        passed: s_statistic <= gamma,
    })
}

/// The order statistics used by the fit, paired with their MP quantiles.
/// Exposed for reporting.
pub fn bulk_pairs(esd: &Esd, config: BemaConfig) -> Result<Vec<(f64, f64)>> {
    let m = esd.len();
    let (lo, hi) = config
        .window(m)
        .ok_or(Error::Precondition("empty BEMA window for this alpha"))?;
    let unit = MpParams::new(1.0, esd.aspect_c())?;
    (lo..=hi)
        .map(|k| Ok((unit.quantile(k as f64 / m as f64)?, esd.eigenvalues()[k - 1])))
        .collect()
}
