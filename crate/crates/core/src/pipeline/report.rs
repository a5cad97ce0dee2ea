use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ExperimentConfig;
use crate::geometry::Class;
use crate::nn::{Activation, TrainHistory};
use crate::numfmt::round_sig;
use crate::ph::BettiVector;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Complete,
    Partial,
}

/// Topology of one class at one layer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerTopology {
    pub betti: BettiVector,
    pub complexity: usize,
    pub k: usize,
    pub eps: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassTrace {
    pub class: Class,
    pub input: LayerTopology,
    /// Hidden layers `1..=l`, then the logits.
    pub layers: Vec<LayerTopology>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistoryRow {
    pub loss: f64,
    pub train_accuracy: f64,
    pub test_accuracy: f64,
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub seed: u64,
    pub epochs_run: usize,
    pub train_accuracy: f64,
    pub test_accuracy: f64,
    pub generalization_gap: f64,
    /// `max(min_a v − max_b v, min_b v − max_a v)` for the class-a
    /// probability `v` over the training points.
    pub separation: f64,
    pub classes: Vec<ClassTrace>,
    pub history: Vec<HistoryRow>,
}

impl SeedRecord {
    pub fn trace(&self, class: Class) -> Option<&ClassTrace> {
        self.classes.iter().find(|t| t.class == class)
    }
}

pub(crate) fn history_rows(h: &TrainHistory) -> Vec<HistoryRow> {
    h.epochs
        .iter()
        .map(|r| HistoryRow {
            loss: r.loss,
            train_accuracy: r.train_acc,
            test_accuracy: r.test_acc,
            rate: r.rate,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedFailure {
    pub seed: u64,
    pub error: String,
    pub exit_code: i32,
}

/// Mean and min–max band across seeds, indexed `[layer][dimension]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassAggregate {
    pub class: Class,
    pub seeds: usize,
    pub betti_mean: Vec<Vec<f64>>,
    pub betti_min: Vec<Vec<usize>>,
    pub betti_max: Vec<Vec<usize>>,
    pub complexity_mean: Vec<f64>,
    pub complexity_min: Vec<usize>,
    pub complexity_max: Vec<usize>,
}

impl ClassAggregate {
    pub fn layers(&self) -> usize {
        self.betti_mean.len()
    }

    pub(crate) fn from_traces(class: Class, traces: &[&ClassTrace]) -> Option<Self> {
        let first = traces.first()?;
        let layers = first.layers.len();
        let dims = first.input.betti.len();
        let n = traces.len() as f64;
        let mut agg = ClassAggregate {
            class,
            seeds: traces.len(),
            betti_mean: vec![vec![0.0; dims]; layers],
            betti_min: vec![vec![usize::MAX; dims]; layers],
            betti_max: vec![vec![0; dims]; layers],
            complexity_mean: vec![0.0; layers],
            complexity_min: vec![usize::MAX; layers],
            complexity_max: vec![0; layers],
        };
        for t in traces {
            for (j, l) in t.layers.iter().enumerate().take(layers) {
                for q in 0..dims {
                    let b = l.betti.get(q);
                    agg.betti_mean[j][q] += b as f64 / n;
                    agg.betti_min[j][q] = agg.betti_min[j][q].min(b);
                    agg.betti_max[j][q] = agg.betti_max[j][q].max(b);
                }
                agg.complexity_mean[j] += l.complexity as f64 / n;
                agg.complexity_min[j] = agg.complexity_min[j].min(l.complexity);
                agg.complexity_max[j] = agg.complexity_max[j].max(l.complexity);
            }
        }
        Some(agg)
    }
}

/// Everything one experiment produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub status: RunStatus,
    /// Seconds since the Unix epoch when the run finished.
    pub timestamp: u64,
    pub dataset: String,
    pub activation: Activation,
    pub hidden_widths: Vec<usize>,
    pub classes: Vec<Class>,
    pub config: ExperimentConfig,
    pub seeds: Vec<SeedRecord>,
    pub failures: Vec<SeedFailure>,
    pub aggregates: Vec<ClassAggregate>,
}

impl ExperimentReport {
    pub fn depth(&self) -> usize {
        self.hidden_widths.len()
    }

    pub fn aggregate(&self, class: Class) -> Option<&ClassAggregate> {
        self.aggregates.iter().find(|a| a.class == class)
    }

    /// Recomputes the aggregates from the seed records.
    pub fn reaggregate(&mut self) {
        self.aggregates = self
            .classes
            .iter()
            .filter_map(|&c| {
                let traces: Vec<&ClassTrace> = self.seeds.iter().filter_map(|s| s.trace(c)).collect();
                ClassAggregate::from_traces(c, &traces)
            })
            .collect();
    }

    /// Rounds every float to nine significant digits, the precision of the
    /// JSON form, so that the in-memory report equals its reloaded copy.
    pub fn normalized(self) -> Result<Self> {
        let mut v = serde_json::to_value(&self)?;
        round_value(&mut v);
        Ok(serde_json::from_value(v)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut v = serde_json::to_value(self)?;
        round_value(&mut v);
        let mut s = serde_json::to_string_pretty(&v)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let version = v.get("schema_version").and_then(|x| x.as_u64());
        if version != Some(SCHEMA_VERSION as u64) {
            return Err(Error::InvalidInput(format!(
                "report schema {version:?} is not supported (expected {SCHEMA_VERSION})"
            )));
        }
        Ok(serde_json::from_value(v)?)
    }
}

fn round_value(v: &mut serde_json::Value) {
    use serde_json::Value;
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64"));
            if let Some(r) = serde_json::Number::from_f64(x) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Writes the report as pretty-printed JSON.
pub fn emit_report(report: &ExperimentReport, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, report.to_json()?)?;
    Ok(())
}

pub fn load_report(path: impl AsRef<Path>) -> Result<ExperimentReport> {
    ExperimentReport::from_json(&std::fs::read_to_string(path)?)
}
