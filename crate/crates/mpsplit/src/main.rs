use std::path::{Path, PathBuf};
use std::process;

use clap::{Args, Parser, Subcommand};
use log::error;
use serde::de::DeserializeOwned;

use mpsplit::config::load_json;
use mpsplit::{
    run_analyze, run_synth, run_training, run_truncation_sweep, AnalyzeConfig, Error,
    ExperimentConfig, ExitCode, Mode, Overrides, SweepConfig, SynthConfig,
};

#[derive(Parser)]
#[command(name = "mpsplit", version, about = "Marchenko-Pastur layer splitting experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train on MNIST, optionally splitting layers every few epochs.
    Train(Common),
    /// BEMA fit, fit test and split plan for one weight matrix.
    Analyze(Common),
    /// α/β sweeps of the edge estimate on a synthetic spiked matrix.
    Synth(Common),
    /// Test accuracy with one layer truncated to a grid of ranks.
    TruncateSweep(Common),
}

#[derive(Args)]
struct Common {
    /// JSON config file; `train` and `synth` fall back to defaults without one.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Output file or directory, depending on the subcommand.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            alpha: self.alpha,
            beta: self.beta,
            gamma: self.gamma,
            epochs: self.epochs,
            seed: self.seed,
            mode: self.mode,
            out: self.out.clone(),
        }
    }

    fn load<T: DeserializeOwned + Default>(&self) -> Result<T, Error> {
        self.config.as_deref().map_or_else(|| Ok(T::default()), load_json)
    }

    fn require<T: DeserializeOwned>(&self, command: &str) -> Result<T, Error> {
        let path: &Path = self
            .config
            .as_deref()
            .ok_or_else(|| Error::Config(format!("`{command}` needs --config")))?;
        load_json(path)
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Train(c) => {
            let mut cfg: ExperimentConfig = c.load()?;
            cfg.apply(&c.overrides())?;
            let run = run_training(&cfg.resolve()?)?;
            if let Some(last) = run.curve.final_row() {
                println!(
                    "test accuracy {:.4}, {} parameters, dims {:?}",
                    last.test_acc,
                    last.param_count,
                    run.network.signature()
                );
            }
        }
        Command::Analyze(c) => {
            let mut cfg: AnalyzeConfig = c.require("analyze")?;
            cfg.apply(&c.overrides())?;
            let report = run_analyze(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        Command::Synth(c) => {
            let mut cfg: SynthConfig = c.load()?;
            cfg.apply(&c.overrides())?;
            print!("{}", run_synth(&cfg)?.to_csv());
        }
        Command::TruncateSweep(c) => {
            let mut cfg: SweepConfig = c.require("truncate-sweep")?;
            cfg.apply(&c.overrides())?;
            print!("{}", mpsplit::runner::sweep_csv(&run_truncation_sweep(&cfg)?));
        }
    }
    Ok(())
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        error!("{e}");
        process::exit(e.exit_code() as i32);
    }
    process::exit(ExitCode::Success as i32);
}
