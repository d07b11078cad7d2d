//! Training curves (CSV plus a JSON sidecar) and JSON reports.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use mpsplit_core::cycle::LayerReport;
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{Error, Result};

pub const CURVE_HEADER: &str = "epoch,train_acc,test_acc,train_loss,param_count,splits";

/// One epoch of a training run. `train_acc` and `train_loss` are measured
/// on the fly during the epoch; `test_acc` and `param_count` describe the
/// network after any split cycle that closed the epoch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub epoch: usize,
    pub train_acc: f64,
    pub test_acc: f64,
    pub train_loss: f64,
    pub param_count: usize,
    pub splits: usize,
    /// Per-layer reports of the split cycle, empty when none ran.
    pub layers: Vec<LayerReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingCurve {
    pub config: ExperimentConfig,
    pub rows: Vec<CurveRow>,
}

impl TrainingCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CURVE_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{:?},{:?},{:?},{},{}",
                r.epoch, r.train_acc, r.test_acc, r.train_loss, r.param_count, r.splits
            )
            .expect("writing to a String");
        }
        out
    }

    pub fn final_row(&self) -> Option<&CurveRow> {
        self.rows.last()
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("report types serialize");
    write_text(path, &text)
}
