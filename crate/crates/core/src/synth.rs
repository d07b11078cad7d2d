//! Seeded spiked matrices `W = σR + S` with `R` iid standard normal.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::math::{cos, ln, sin, sqrt, tan};
use crate::matrix::Matrix;

/// The deterministic part `S` of a spiked matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum DeterministicPart {
    None,
    /// `S[i, j] = tan(π/2 + 1/(j+1)) + cos(i)·ln(i+j+1) + sin(j)·cos(i/j)`
    /// with 1-based `i, j`.
    ExampleFormula,
    /// `θ·u vᵀ` for random unit vectors `u`, `v`.
    RankOne { theta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpikedMatrixSpec {
    pub n: usize,
    pub seed: u64,
    pub noise_sigma: f64,
    pub deterministic_part: DeterministicPart,
}

impl SpikedMatrixSpec {
    pub fn new(n: usize, seed: u64, noise_sigma: f64, part: DeterministicPart) -> Result<Self> {
        let spec = Self {
            n,
            seed,
            noise_sigma,
            deterministic_part: part,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(alloc::format!(
                "spiked matrix needs n >= 2, got {}",
                self.n
            )));
        }
        if !(self.noise_sigma > 0.0 && self.noise_sigma.is_finite()) {
            return Err(Error::domain("noise_sigma", self.noise_sigma, "noise_sigma > 0"));
        }
        if let DeterministicPart::RankOne { theta } = self.deterministic_part {
            if !theta.is_finite() {
                return Err(Error::domain("theta", theta, "finite"));
            }
        }
        Ok(())
    }
}

/// Entry `(i, j)` (1-based) of the example deterministic matrix. The tangent
/// term equals `−cot(1/(j+1)) ≈ −(j+1)`, a large column-constant signal.
pub fn example_entry(i: usize, j: usize) -> f64 {
    let (fi, fj) = (i as f64, j as f64);
    tan(core::f64::consts::FRAC_PI_2 + 1.0 / (fj + 1.0))
        + cos(fi) * ln(fi + fj + 1.0)
        + sin(fj) * cos(fi / fj)
}

fn unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let norm = sqrt(v.iter().map(|x| x * x).sum());
    v.into_iter().map(|x| x / norm).collect()
}

/// Builds the `n x n` matrix. The noise is drawn first from the seeded
/// stream, so every variant with the same seed shares the same `R`.
pub fn gen_spiked(spec: &SpikedMatrixSpec) -> Result<Matrix> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise: Vec<f64> = (0..n * n)
        .map(|_| spec.noise_sigma * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let mut w = Matrix::new(n, n, noise)?;
    match spec.deterministic_part {
        DeterministicPart::None => {}
        DeterministicPart::ExampleFormula => {
            for i in 0..n {
                for j in 0..n {
                    let v = w.get(i, j) + example_entry(i + 1, j + 1);
                    w.set(i, j, v);
                }
            }
        }
        DeterministicPart::RankOne { theta } => {
            let u = unit_vector(&mut rng, n);
            let v = unit_vector(&mut rng, n);
            for i in 0..n {
                for j in 0..n {
                    let e = w.get(i, j) + theta * u[i] * v[j];
                    w.set(i, j, e);
                }
            }
        }
    }
    Ok(w)
}
