//! One analyse-and-split pass over a network.
//!
//! Each layer present at the start of the pass is analysed in order:
//! spectrum, BEMA edge, bulk fit test, split plan. Accepted layers are
//! replaced by their two factors immediately; the new factors are not
//! revisited until the next pass.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::bema::{bema_fit, goodness_of_fit, spike_count, BemaConfig, BemaResult, MIN_EIGENVALUES};
use crate::error::Result;
use crate::nn::{Layer, Network, TrainConfig};
use crate::prune::{plan_split, split, SplitDecision};
use crate::spectral::{symmetrized_spectrum, Esd};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CycleConfig {
    pub bema: BemaConfig,
    pub gamma: f64,
    pub removal_fraction: f64,
}

impl From<&TrainConfig> for CycleConfig {
    fn from(cfg: &TrainConfig) -> Self {
        Self {
            bema: cfg.bema,
            gamma: cfg.gamma,
            removal_fraction: cfg.removal_fraction,
        }
    }
}

/// Everything the analysis learned about one layer.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LayerAnalysis {
    pub bema: BemaResult,
    pub n_spikes: usize,
    pub decision: SplitDecision,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "status", rename_all = "snake_case"))]
pub enum LayerOutcome {
    Split(LayerAnalysis),
    Kept(LayerAnalysis),
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LayerReport {
    /// Position of the layer in the network before this pass.
    pub layer_index: usize,
    pub out_dim: usize,
    pub in_dim: usize,
    pub outcome: LayerOutcome,
}

impl LayerReport {
    pub fn was_split(&self) -> bool {
        matches!(self.outcome, LayerOutcome::Split(_))
    }

    /// Fit statistic `s`, if the layer got far enough to be tested.
    pub fn s_statistic(&self) -> Option<f64> {
        match &self.outcome {
            LayerOutcome::Split(a) | LayerOutcome::Kept(a) => Some(a.decision.fit.s_statistic),
            LayerOutcome::Skipped { .. } => None,
        }
    }
}

/// Spectrum, BEMA fit, fit test and split plan for one layer.
pub fn analyze_layer(layer: &Layer, cfg: &CycleConfig) -> Result<(Esd, LayerAnalysis)> {
    let esd = symmetrized_spectrum(&layer.weights)?;
    let bema = bema_fit(&esd, cfg.bema)?;
    let fit = goodness_of_fit(&esd, &bema, cfg.gamma)?;
    let decision = plan_split(&layer.weights, &esd, &bema, &fit, cfg.removal_fraction)?;
    let n_spikes = spike_count(&esd, &bema);
    Ok((
        esd,
        LayerAnalysis {
            bema,
            n_spikes,
            decision,
        },
    ))
}

/// Runs one pass over `net`. A layer whose analysis or SVD fails is left
/// untouched and reported as skipped.
pub fn split_cycle(net: &mut Network, cfg: &CycleConfig) -> Vec<LayerReport> {
    let original = net.layers().len();
    let mut reports = Vec::with_capacity(original);
    let mut pos = 0;
    for layer_index in 0..original {
        let layer = &net.layers()[pos];
        let (out_dim, in_dim) = (layer.out_dim(), layer.in_dim());
        let report = |outcome| LayerReport {
            layer_index,
            out_dim,
            in_dim,
            outcome,
        };
        if out_dim.min(in_dim) < MIN_EIGENVALUES {
            reports.push(report(LayerOutcome::Skipped {
                reason: "fewer eigenvalues than BEMA needs".to_string(),
            }));
            pos += 1;
            continue;
        }
        let analysis = match analyze_layer(layer, cfg) {
            Ok((_, a)) => a,
            Err(e) => {
                reports.push(report(LayerOutcome::Skipped {
                    reason: e.to_string(),
                }));
                pos += 1;
                continue;
            }
        };
        if !analysis.decision.accepted {
            reports.push(report(LayerOutcome::Kept(analysis)));
            pos += 1;
            continue;
        }
        let zeros;
        let bias = match &layer.bias {
            Some(b) => b.as_slice(),
            None => {
                zeros = alloc::vec![0.0; out_dim];
                zeros.as_slice()
            }
        };
        let replaced = split(&layer.weights, bias, &analysis.decision)
            .and_then(|result| net.replace_layer(pos, result));
        match replaced {
            Ok(()) => {
                reports.push(report(LayerOutcome::Split(analysis)));
                pos += 2;
            }
            Err(e) => {
                reports.push(report(LayerOutcome::Skipped {
                    reason: e.to_string(),
                }));
                pos += 1;
            }
        }
    }
    reports
}
