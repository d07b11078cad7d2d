//! Marchenko–Pastur law for the spectrum of `(1/N) WᵀW`.
//!
//! With entry variance `σ²` and aspect ratio `c = M/N ≤ 1` the density is
//!
//! ```text
//! f(x) = sqrt((λ+ − x)(x − λ−)) / (2π σ² c x),   λ± = σ² (1 ± √c)²
//! ```
//!
//! on `[λ−, λ+]` and zero elsewhere. For `c = 1` the lower edge is zero and
//! the density has an integrable `x^{-1/2}` singularity there.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::math::{acos, asin, cos, sin, sqrt};

const QUANTILE_MAX_ITERS: usize = 200;

/// Parameters and support edges of a Marchenko–Pastur law.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MpParams {
    sigma_sq: f64,
    c: f64,
    lambda_minus: f64,
    lambda_plus: f64,
}

impl MpParams {
    /// Builds the law with variance `sigma_sq` and ratio `c ∈ (0, 1]`,
    /// computing `λ± = σ²(1 ± √c)²`.
    pub fn new(sigma_sq: f64, c: f64) -> Result<Self> {
        if !(sigma_sq > 0.0 && sigma_sq.is_finite()) {
            return Err(Error::domain("sigma_sq", sigma_sq, "sigma_sq > 0"));
        }
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::domain("c", c, "0 < c <= 1"));
        }
        let root = sqrt(c);
        Ok(Self {
            sigma_sq,
            c,
            lambda_minus: sigma_sq * (1.0 - root) * (1.0 - root),
            lambda_plus: sigma_sq * (1.0 + root) * (1.0 + root),
        })
    }

    pub fn sigma_sq(&self) -> f64 {
        self.sigma_sq
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn lambda_minus(&self) -> f64 {
        self.lambda_minus
    }

    pub fn lambda_plus(&self) -> f64 {
        self.lambda_plus
    }

    fn center(&self) -> f64 {
        0.5 * (self.lambda_minus + self.lambda_plus)
    }

    fn half_width(&self) -> f64 {
        0.5 * (self.lambda_plus - self.lambda_minus)
    }

    fn normalizer(&self) -> f64 {
        2.0 * PI * self.sigma_sq * self.c
    }

    /// Density at `x`; exactly zero outside `[λ−, λ+]` and at `x = 0`.
    pub fn pdf(&self, x: f64) -> f64 {
        if !(x > 0.0) || x < self.lambda_minus || x > self.lambda_plus {
            return 0.0;
        }
        let prod = (self.lambda_plus - x) * (x - self.lambda_minus);
        if prod <= 0.0 {
            return 0.0;
        }
        sqrt(prod) / (self.normalizer() * x)
    }

    /// Cumulative distribution function, via the closed-form antiderivative
    ///
    /// ```text
    /// ∫ √((b−t)(t−a))/t dt = R(t) + m·asin((t−m)/h) − √(ab)·asin(((a+b)t − 2ab)/(t(b−a)))
    /// ```
    ///
    /// where `R = √((b−t)(t−a))`, `m` is the support centre and `h` its half
    /// width. The last term vanishes when `c = 1` (`a = 0`).
    pub fn cdf(&self, x: f64) -> f64 {
        let (a, b) = (self.lambda_minus, self.lambda_plus);
        if x <= a {
            return 0.0;
        }
        if x >= b {
            return 1.0;
        }
        let m = self.center();
        let h = self.half_width();
        let r = sqrt(((b - x) * (x - a)).max(0.0));
        let mut integral = r + m * (asin((x - m) / h) + FRAC_PI_2);
        if a > 0.0 {
            // √(ab) = σ²(1 − c)
            let g = self.sigma_sq * (1.0 - self.c);
            let arg = ((a + b) * x - 2.0 * a * b) / (x * (b - a));
            integral -= g * (asin(arg) + FRAC_PI_2);
        }
        (integral / self.normalizer()).clamp(0.0, 1.0)
    }

    /// CDF by adaptive Gauss–Kronrod quadrature after substituting
    /// `x = m − h·cos θ`, which turns the edge square roots (and the `c = 1`
    /// pole) into a smooth integrand. Kept as an independent cross-check of
    /// [`MpParams::cdf`].
    pub fn cdf_by_quadrature(&self, x: f64) -> f64 {
        if x <= self.lambda_minus {
            return 0.0;
        }
        if x >= self.lambda_plus {
            return 1.0;
        }
        let m = self.center();
        let h = self.half_width();
        let theta_x = acos((m - x) / h);
        let norm = self.normalizer();
        let integrand = |theta: f64| {
            let denom = m - h * cos(theta);
            if denom <= 0.0 {
                // Only reachable at θ = 0 when c = 1, where
                // h² sin²θ / (h(1 − cos θ)) → 2h.
                return 2.0 * h / norm;
            }
            let s = sin(theta);
            h * h * s * s / (norm * denom)
        };
        adaptive_quadrature(&integrand, 0.0, theta_x, 1e-13, 400).clamp(0.0, 1.0)
    }

    /// Lower-tail quantile: the `q` with `cdf(q) = p`, found by bisection on
    /// `[λ−, λ+]`. `p = 0` gives `λ−` and `p = 1` gives `λ+`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain("p", p, "0 <= p <= 1"));
        }
        if p == 0.0 {
            return Ok(self.lambda_minus);
        }
        if p == 1.0 {
            return Ok(self.lambda_plus);
        }
        let (mut lo, mut hi) = (self.lambda_minus, self.lambda_plus);
        let tol = 1e-14 * self.lambda_plus;
        for _ in 0..QUANTILE_MAX_ITERS {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= tol {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// `mp_edges(σ², c)`: the law and its support edges.
pub fn mp_edges(sigma_sq: f64, c: f64) -> Result<MpParams> {
    MpParams::new(sigma_sq, c)
}

// Gauss–Kronrod 7/15 nodes on [-1, 1] (non-negative half) and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7/K15 panel: (Kronrod estimate, |Kronrod - Gauss|).
fn gauss_kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Globally adaptive G7/K15 quadrature. Bisects the panel with the largest
/// error estimate until the summed estimate drops below `tol` or there are
/// `max_panels` panels.
pub(crate) fn adaptive_quadrature(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (v, e) = gauss_kronrod(f, a, b);
    let mut panels = alloc::vec![(a, b, v, e)];
    while panels.len() < max_panels {
        let total_err: f64 = panels.iter().map(|p| p.3).sum();
        if total_err <= tol {
            break;
        }
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            if p.3 > panels[worst].3 {
                worst = i;
            }
        }
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (lv, le) = gauss_kronrod(f, lo, mid);
        let (rv, re) = gauss_kronrod(f, mid, hi);
        panels.push((lo, mid, lv, le));
        panels.push((mid, hi, rv, re));
    }
    panels.iter().map(|p| p.2).sum()
}
