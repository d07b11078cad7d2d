//! JSON run configurations and command-line overrides.

use std::fs;
use std::path::{Path, PathBuf};

use mpsplit_core::{BemaConfig, DeterministicPart, SpikedMatrixSpec, TrainConfig};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Split,
    NonSplit,
}

/// Flag overrides shared by every subcommand. A flag that has no meaning
/// for a subcommand is a config error.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub epochs: Option<usize>,
    pub seed: Option<u64>,
    pub mode: Option<Mode>,
    pub out: Option<PathBuf>,
}

impl Overrides {
    fn reject(&self, command: &str, epochs: bool, seed: bool, mode: bool, gamma: bool) -> Result<()> {
        let unused = [
            ("--epochs", epochs || self.epochs.is_none()),
            ("--seed", seed || self.seed.is_none()),
            ("--mode", mode || self.mode.is_none()),
            ("--gamma", gamma || self.gamma.is_none()),
        ];
        match unused.iter().find(|(_, ok)| !ok) {
            Some((flag, _)) => Err(Error::Config(format!("{flag} does not apply to `{command}`"))),
            None => Ok(()),
        }
    }

    fn bema(&self, base: BemaConfig) -> Result<BemaConfig> {
        Ok(BemaConfig::new(
            self.alpha.unwrap_or(base.alpha()),
            self.beta.unwrap_or(base.beta()),
        )?)
    }
}

pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn default_mnist_dir() -> PathBuf {
    PathBuf::from("data/mnist")
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("runs/latest")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub architecture: Vec<usize>,
    pub mode: Mode,
    pub mnist_dir: PathBuf,
    pub out_dir: PathBuf,
    /// Use only the first `n` training samples.
    pub train_limit: Option<usize>,
    pub test_limit: Option<usize>,
    pub training: TrainConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            architecture: vec![784, 1000, 10],
            mode: Mode::NonSplit,
            mnist_dir: default_mnist_dir(),
            out_dir: default_out_dir(),
            train_limit: None,
            test_limit: None,
            training: TrainConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        self.training.bema = o.bema(self.training.bema)?;
        if let Some(g) = o.gamma {
            self.training.gamma = g;
        }
        if let Some(e) = o.epochs {
            self.training.epochs = e;
        }
        if let Some(s) = o.seed {
            self.training.seed = s;
        }
        if let Some(m) = o.mode {
            self.mode = m;
        }
        if let Some(out) = &o.out {
            self.out_dir = out.clone();
        }
        Ok(())
    }

    /// Validates and makes `mode` and `training.split_enabled` agree.
    pub fn resolve(mut self) -> Result<Self> {
        self.training.split_enabled = self.mode == Mode::Split;
        self.training.validate()?;
        if self.architecture.len() < 2 || self.architecture.contains(&0) {
            return Err(Error::Config(format!(
                "architecture needs at least two positive widths, got {:?}",
                self.architecture
            )));
        }
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightsSource {
    Checkpoint { path: PathBuf, layer: usize },
    Matrix { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeConfig {
    pub source: WeightsSource,
    #[serde(default)]
    pub bema: BemaConfig,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default = "default_removal")]
    pub removal_fraction: f64,
    #[serde(default = "default_analyze_out")]
    pub out: PathBuf,
}

fn default_gamma() -> f64 {
    TrainConfig::default().gamma
}

fn default_removal() -> f64 {
    TrainConfig::default().removal_fraction
}

fn default_analyze_out() -> PathBuf {
    PathBuf::from("runs/analysis.json")
}

impl AnalyzeConfig {
    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        o.reject("analyze", false, false, false, true)?;
        self.bema = o.bema(self.bema)?;
        if let Some(g) = o.gamma {
            self.gamma = g;
        }
        if let Some(out) = &o.out {
            self.out = out.clone();
        }
        Ok(())
    }
}

fn default_alpha_grid() -> Vec<f64> {
    (1..=9).map(|k| k as f64 * 0.05).collect()
}

fn default_beta_grid() -> Vec<f64> {
    (1..=19).map(|k| k as f64 * 0.05).collect()
}

fn default_spec() -> SpikedMatrixSpec {
    SpikedMatrixSpec {
        n: 1000,
        seed: 0,
        noise_sigma: 1.0,
        deterministic_part: DeterministicPart::ExampleFormula,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub spec: SpikedMatrixSpec,
    /// `α` used for the `β` sweep and `β` used for the `α` sweep.
    pub bema: BemaConfig,
    pub alpha_grid: Vec<f64>,
    pub beta_grid: Vec<f64>,
    pub out_dir: PathBuf,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            spec: default_spec(),
            bema: BemaConfig::default(),
            alpha_grid: default_alpha_grid(),
            beta_grid: default_beta_grid(),
            out_dir: PathBuf::from("runs/synth"),
        }
    }
}

impl SynthConfig {
    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        o.reject("synth", false, true, false, false)?;
        self.bema = o.bema(self.bema)?;
        if let Some(s) = o.seed {
            self.spec.seed = s;
        }
        if let Some(out) = &o.out {
            self.out_dir = out.clone();
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub checkpoint: PathBuf,
    #[serde(default)]
    pub layer: usize,
    #[serde(default = "default_mnist_dir")]
    pub mnist_dir: PathBuf,
    #[serde(default)]
    pub test_limit: Option<usize>,
    /// Ranks to evaluate; empty means a default grid. The full rank and the
    /// MP-threshold rank are always added.
    #[serde(default)]
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub bema: BemaConfig,
    #[serde(default = "default_sweep_out")]
    pub out: PathBuf,
}

fn default_sweep_out() -> PathBuf {
    PathBuf::from("runs/truncation.csv")
}

impl SweepConfig {
    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        o.reject("truncate-sweep", false, false, false, false)?;
        self.bema = o.bema(self.bema)?;
        if let Some(out) = &o.out {
            self.out = out.clone();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn experiment_defaults_fill_missing_fields() {
        let cfg: ExperimentConfig =
            serde_json::from_str(r#"{"architecture": [4, 3, 2], "training": {"epochs": 2}}"#).unwrap();
        assert_eq!(cfg.training.epochs, 2);
        assert_eq!(cfg.training.step_size, 0.05);
        assert_eq!(cfg.mode, Mode::NonSplit);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"architecure": [1, 2]}"#).is_err());
    }

    #[test]
    fn bema_settings_are_validated_on_load() {
        let cfg: ExperimentConfig =
            serde_json::from_str(r#"{"training": {"bema": {"beta": 0.9}}}"#).unwrap();
        assert_eq!(cfg.training.bema.alpha(), 0.25);
        assert_eq!(cfg.training.bema.beta(), 0.9);
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"training": {"bema": {"alpha": 0.7}}}"#).is_err());
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"training": {"bema": {"beta": 1.0}}}"#).is_err());
    }

    #[test]
    fn overrides_apply_and_mode_drives_splitting() {
        let mut cfg = ExperimentConfig::default();
        let o = Overrides {
            alpha: Some(0.3),
            gamma: Some(0.02),
            epochs: Some(4),
            mode: Some(Mode::Split),
            ..Overrides::default()
        };
        cfg.apply(&o).unwrap();
        let cfg = cfg.resolve().unwrap();
        assert!(cfg.training.split_enabled);
        assert_eq!(cfg.training.bema.alpha(), 0.3);
        assert_eq!(cfg.training.bema.beta(), 0.5);
        assert_eq!((cfg.training.gamma, cfg.training.epochs), (0.02, 4));
    }

    #[test]
    fn inapplicable_flags_are_config_errors() {
        let mut cfg = SynthConfig::default();
        let err = cfg
            .apply(&Overrides {
                epochs: Some(3),
                ..Overrides::default()
            })
            .unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        let mut bad = ExperimentConfig::default();
        assert!(bad
            .apply(&Overrides {
                alpha: Some(0.7),
                ..Overrides::default()
            })
            .is_err());
    }
}
