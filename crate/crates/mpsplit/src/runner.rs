//! The four experiment drivers behind the CLI subcommands.

use std::path::Path;

use log::{info, warn};
use mpsplit_core::cycle::{split_cycle, CycleConfig, LayerOutcome};
use mpsplit_core::nn::{epoch_rng, evaluate, train_epoch};
use mpsplit_core::prune::{split_at_rank, split_params};
use mpsplit_core::{
    bema_fit, gen_spiked, goodness_of_fit, plan_split, spike_count, symmetrized_spectrum,
    BemaConfig, BemaResult, Dataset, FitReport, Matrix, Network, SpikedMatrixSpec, Split, SplitDecision,
};
use serde::{Deserialize, Serialize};

use crate::checkpoint::{load_checkpoint, save_checkpoint};
use crate::config::{AnalyzeConfig, ExperimentConfig, SweepConfig, SynthConfig, WeightsSource};
use crate::error::{Error, Result};
use crate::idx::{load_mnist, load_mnist_dir, TEST_IMAGES, TEST_LABELS};
use crate::matrix_io::read_matrix;
use crate::report::{write_json, write_text, CurveRow, TrainingCurve};

pub const CURVE_CSV: &str = "curve.csv";
pub const CURVE_JSON: &str = "curve.json";
pub const CHECKPOINT_DIR: &str = "checkpoint";

/// Loads MNIST and keeps the first `train_limit` / `test_limit` samples.
pub fn load_data(
    dir: &Path,
    train_limit: Option<usize>,
    test_limit: Option<usize>,
) -> Result<(Dataset, Dataset)> {
    let (mut train, mut test) = load_mnist_dir(dir)?;
    if let Some(n) = train_limit {
        train = train.head(n);
    }
    if let Some(n) = test_limit {
        test = test.head(n);
    }
    if train.is_empty() || test.is_empty() {
        return Err(Error::Data("training and test sets must be nonempty".into()));
    }
    Ok((train, test))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingRun {
    pub network: Network,
    pub curve: TrainingCurve,
}

/// Trains from a fresh seeded network. In split mode a split cycle closes
/// every `split_period`-th epoch except the last, so every split is followed
/// by further training.
pub fn train(config: &ExperimentConfig, train: &Dataset, test: &Dataset) -> Result<TrainingRun> {
    let config = config.clone().resolve()?;
    let t = &config.training;
    if train.dim() != config.architecture[0] {
        return Err(Error::Data(format!(
            "dataset dimension {} does not match input width {}",
            train.dim(),
            config.architecture[0]
        )));
    }
    let mut net = Network::init(&config.architecture, t.seed)?;
    let cycle = CycleConfig::from(t);
    let mut rows = Vec::with_capacity(t.epochs);
    for epoch in 1..=t.epochs {
        let stats = train_epoch(&mut net, train, t.batch_size, t.step_size, &mut epoch_rng(t.seed, epoch - 1))?;
        let layers = if t.split_enabled && epoch % t.split_period == 0 && epoch < t.epochs {
            let reports = split_cycle(&mut net, &cycle);
            for r in &reports {
                if let LayerOutcome::Skipped { reason } = &r.outcome {
                    warn!("epoch {epoch}: layer {} skipped: {reason}", r.layer_index);
                }
            }
            reports
        } else {
            Vec::new()
        };
        let splits = layers.iter().filter(|r| r.was_split()).count();
        let row = CurveRow {
            epoch,
            train_acc: stats.accuracy,
            test_acc: evaluate(&net, test)?,
            train_loss: stats.mean_loss,
            param_count: net.param_count(),
            splits,
            layers,
        };
        info!(
            "epoch {epoch}: loss {:.4} train {:.4} test {:.4} params {} splits {} dims {:?}",
            row.train_loss,
            row.train_acc,
            row.test_acc,
            row.param_count,
            splits,
            net.signature()
        );
        rows.push(row);
    }
    Ok(TrainingRun {
        network: net,
        curve: TrainingCurve { config, rows },
    })
}

/// Loads data, trains, and writes `curve.csv`, `curve.json` and the final
/// checkpoint under `out_dir`.
pub fn run_training(config: &ExperimentConfig) -> Result<TrainingRun> {
    let (train_set, test_set) = load_data(&config.mnist_dir, config.train_limit, config.test_limit)?;
    let run = train(config, &train_set, &test_set)?;
    let out = &run.curve.config.out_dir;
    write_text(&out.join(CURVE_CSV), &run.curve.to_csv())?;
    write_json(&out.join(CURVE_JSON), &run.curve)?;
    save_checkpoint(&run.network, &out.join(CHECKPOINT_DIR), Some(run.curve.config.training.seed))?;
    Ok(run)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EsdSummary {
    pub m: usize,
    pub n_normalizer: usize,
    pub aspect_c: f64,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerAnalysisReport {
    pub out_dim: usize,
    pub in_dim: usize,
    pub esd: EsdSummary,
    pub bema: BemaResult,
    pub n_spikes: usize,
    pub n_small: usize,
    pub fit: FitReport,
    /// The split that would be made; `accepted` says whether it would happen.
    pub split: SplitDecision,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub source: WeightsSource,
    pub gamma: f64,
    pub removal_fraction: f64,
    pub layer: LayerAnalysisReport,
}

pub fn analyze_matrix(
    w: &Matrix,
    bema: BemaConfig,
    gamma: f64,
    removal_fraction: f64,
) -> Result<LayerAnalysisReport> {
    let esd = symmetrized_spectrum(w)?;
    let fit_result = bema_fit(&esd, bema)?;
    let fit = goodness_of_fit(&esd, &fit_result, gamma)?;
    let split = plan_split(w, &esd, &fit_result, &fit, removal_fraction)?;
    let eig = esd.eigenvalues();
    Ok(LayerAnalysisReport {
        out_dim: w.rows(),
        in_dim: w.cols(),
        esd: EsdSummary {
            m: esd.len(),
            n_normalizer: esd.n_normalizer(),
            aspect_c: esd.aspect_c(),
            min: eig[0],
            max: eig[eig.len() - 1],
            mean: eig.iter().sum::<f64>() / eig.len() as f64,
        },
        bema: fit_result,
        n_spikes: spike_count(&esd, &fit_result),
        n_small: split.n_small,
        fit,
        split,
    })
}

fn load_weights(source: &WeightsSource) -> Result<Matrix> {
    match source {
        WeightsSource::Matrix { path } => read_matrix(path),
        WeightsSource::Checkpoint { path, layer } => {
            let (net, _) = load_checkpoint(path)?;
            net.layer(*layer).map(|l| l.weights.clone()).ok_or_else(|| {
                Error::Config(format!(
                    "layer {layer} out of range: checkpoint has {} layers",
                    net.layers().len()
                ))
            })
        }
    }
}

pub fn run_analyze(config: &AnalyzeConfig) -> Result<AnalysisReport> {
    let w = load_weights(&config.source)?;
    let layer = analyze_matrix(&w, config.bema, config.gamma, config.removal_fraction)?;
    let report = AnalysisReport {
        source: config.source.clone(),
        gamma: config.gamma,
        removal_fraction: config.removal_fraction,
        layer,
    };
    write_json(&config.out, &report)?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sweep {
    Alpha,
    Beta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthRow {
    pub sweep: Sweep,
    pub alpha: f64,
    pub beta: f64,
    pub sigma_hat_sq: f64,
    pub lambda_plus: f64,
    pub spikes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthReport {
    pub spec: SpikedMatrixSpec,
    pub bema: BemaConfig,
    /// Eigenvalues of the noise-free reference `(1/N)RᵀR` lie below this.
    pub reference_edge: f64,
    pub rows: Vec<SynthRow>,
}

impl SynthReport {
    pub const CSV_HEADER: &'static str = "sweep,alpha,beta,sigma_hat_sq,lambda_plus,spikes";

    pub fn to_csv(&self) -> String {
        let mut out = format!("{}\n", Self::CSV_HEADER);
        for r in &self.rows {
            let sweep = match r.sweep {
                Sweep::Alpha => "alpha",
                Sweep::Beta => "beta",
            };
            out.push_str(&format!(
                "{sweep},{:?},{:?},{:?},{:?},{}\n",
                r.alpha, r.beta, r.sigma_hat_sq, r.lambda_plus, r.spikes
            ));
        }
        out
    }
}

/// Sweeps `α` at fixed `bema.beta()` and `β` at fixed `bema.alpha()` on one
/// generated matrix.
pub fn synth_study(
    spec: &SpikedMatrixSpec,
    bema: BemaConfig,
    alpha_grid: &[f64],
    beta_grid: &[f64],
) -> Result<SynthReport> {
    let esd = symmetrized_spectrum(&gen_spiked(spec)?)?;
    let point = |sweep, alpha, beta| -> Result<SynthRow> {
        let fit = bema_fit(&esd, BemaConfig::new(alpha, beta)?)?;
        Ok(SynthRow {
            sweep,
            alpha,
            beta,
            sigma_hat_sq: fit.sigma_hat_sq,
            lambda_plus: fit.lambda_plus,
            spikes: spike_count(&esd, &fit),
        })
    };
    let mut rows = Vec::with_capacity(alpha_grid.len() + beta_grid.len());
    for &a in alpha_grid {
        rows.push(point(Sweep::Alpha, a, bema.beta())?);
    }
    for &b in beta_grid {
        rows.push(point(Sweep::Beta, bema.alpha(), b)?);
    }
    let sigma_sq = spec.noise_sigma * spec.noise_sigma;
    Ok(SynthReport {
        spec: *spec,
        bema,
        reference_edge: 4.0 * sigma_sq,
        rows,
    })
}

pub fn run_synth(config: &SynthConfig) -> Result<SynthReport> {
    let report = synth_study(&config.spec, config.bema, &config.alpha_grid, &config.beta_grid)?;
    write_text(&config.out_dir.join("synth.csv"), &report.to_csv())?;
    write_json(&config.out_dir.join("synth.json"), &report)?;
    Ok(report)
}

/// `net` with layer `index` replaced by its rank-`rank` split. The full rank
/// returns `net` unchanged, so its accuracy is exactly the original one.
pub fn truncate_layer(net: &Network, index: usize, rank: usize) -> Result<Network> {
    let layer = net
        .layer(index)
        .ok_or_else(|| Error::Config(format!("layer {index} out of range")))?;
    let full = layer.out_dim().min(layer.in_dim());
    if rank == 0 {
        return Err(Error::Config(
            "rank 0 would disconnect the network; ranks start at 1".into(),
        ));
    }
    if rank > full {
        return Err(Error::Config(format!("rank {rank} exceeds the layer's full rank {full}")));
    }
    if rank == full {
        return Ok(net.clone());
    }
    let zeros;
    let bias = match &layer.bias {
        Some(b) => b.as_slice(),
        None => {
            zeros = vec![0.0; layer.out_dim()];
            &zeros
        }
    };
    let result = split_at_rank(&layer.weights, bias, rank)?;
    let mut out = net.clone();
    out.replace_layer(index, result)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub rank: usize,
    pub test_acc: f64,
    /// Parameters of the (possibly split) layer.
    pub layer_params: usize,
    /// Whether `rank` equals the number of eigenvalues above the fitted MP edge.
    pub mp_threshold: bool,
}

pub const SWEEP_HEADER: &str = "rank,test_acc,layer_params,mp_threshold";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:?},{},{}\n",
            r.rank,
            r.test_acc,
            r.layer_params,
            u8::from(r.mp_threshold)
        ));
    }
    out
}

const DEFAULT_RANKS: [usize; 10] = [1, 2, 5, 10, 20, 50, 100, 200, 500, 1000];

/// Accuracy of `net` on `test` with layer `index` truncated to each rank.
/// The grid always contains the full rank and the MP-threshold rank.
pub fn truncation_sweep(
    net: &Network,
    index: usize,
    test: &Dataset,
    ranks: &[usize],
    bema: BemaConfig,
) -> Result<Vec<SweepRow>> {
    let layer = net
        .layer(index)
        .ok_or_else(|| Error::Config(format!("layer {index} out of range")))?;
    let full = layer.out_dim().min(layer.in_dim());
    let esd = symmetrized_spectrum(&layer.weights)?;
    let mp_rank = spike_count(&esd, &bema_fit(&esd, bema)?);
    let mut grid: Vec<usize> = if ranks.is_empty() {
        DEFAULT_RANKS.iter().copied().filter(|&r| r < full).collect()
    } else {
        ranks.to_vec()
    };
    grid.push(full);
    if mp_rank > 0 {
        grid.push(mp_rank);
    }
    grid.sort_unstable();
    grid.dedup();
    let bias = usize::from(layer.bias.is_some()) * layer.out_dim();
    grid.into_iter()
        .map(|rank| {
            let truncated = truncate_layer(net, index, rank)?;
            let layer_params = if rank == full {
                layer.param_count()
            } else {
                split_params(layer.out_dim(), layer.in_dim(), rank) - layer.out_dim() + bias
            };
            Ok(SweepRow {
                rank,
                test_acc: evaluate(&truncated, test)?,
                layer_params,
                mp_threshold: rank == mp_rank,
            })
        })
        .collect()
}

pub fn run_truncation_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    let (net, _) = load_checkpoint(&config.checkpoint)?;
    let dir = &config.mnist_dir;
    let mut test = load_mnist(&dir.join(TEST_IMAGES), &dir.join(TEST_LABELS), Split::Test)?;
    if let Some(n) = config.test_limit {
        test = test.head(n);
    }
    let rows = truncation_sweep(&net, config.layer, &test, &config.ranks, config.bema)?;
    write_text(&config.out, &sweep_csv(&rows))?;
    Ok(rows)
}
