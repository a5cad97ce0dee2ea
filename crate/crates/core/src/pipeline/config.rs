use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::geometry::{gen_dataset, load_csv, pca_project, Class, CsvOptions, DatasetKind, DatasetSpec, Geometry, LabeledCloud};
use crate::nn::{Activation, ArchPreset, ArchSpec, TrainConfig};
use crate::ph::{BettiVector, PhSettings};
use crate::{Error, Result};

/// One experiment: data, network, schedule, topology settings and seeds.
///
/// Parsed from TOML with the sections `[dataset]`, `[network]`,
/// `[training]`, `[topology]` and `[run]`. Everything except the dataset
/// kind, the network shape and the seed list has a default.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dataset: DatasetConfig,
    pub network: NetworkConfig,
    #[serde(default)]
    pub training: TrainConfig,
    #[serde(default)]
    pub topology: TopologyConfig,
    pub run: RunConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetConfig {
    pub kind: DatasetKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points_per_class: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    /// Fixes the sample across run seeds; by default each run seed draws its own.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Share of every class that goes to the training side.
    #[serde(default = "default_split")]
    pub split_ratio: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<Geometry>,
    /// CSV input, for `kind = "csv"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default = "default_delimiter")]
    pub delimiter: char,
    #[serde(default)]
    pub has_header: bool,
    /// Zero-based label column; the last column when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_column: Option<usize>,
    /// Project onto this many principal components before training.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pca: Option<usize>,
    /// Centre the inputs and scale them to unit mean square.
    #[serde(default = "default_true")]
    pub standardize: bool,
}

fn default_true() -> bool {
    true
}

fn default_split() -> f64 {
    0.8
}

fn default_delimiter() -> char {
    ','
}

impl DatasetConfig {
    pub fn synthetic(kind: DatasetKind) -> Self {
        DatasetConfig {
            kind,
            points_per_class: None,
            noise_sigma: None,
            gap: None,
            seed: None,
            split_ratio: default_split(),
            geometry: None,
            path: None,
            delimiter: default_delimiter(),
            has_header: false,
            label_column: None,
            pca: None,
            standardize: true,
        }
    }

    /// Generator settings for a run seed (synthetic kinds only).
    pub fn spec(&self, run_seed: u64) -> Result<DatasetSpec> {
        if self.kind == DatasetKind::Csv {
            return Err(Error::Config("a csv dataset has no generator".into()));
        }
        let mut spec = DatasetSpec::new(self.kind, self.seed.unwrap_or(run_seed));
        if let Some(n) = self.points_per_class {
            spec.points_per_class = n;
        }
        if let Some(s) = self.noise_sigma {
            spec.noise_sigma = s;
        }
        if let Some(g) = self.gap {
            spec.gap = g;
        }
        if let Some(g) = &self.geometry {
            spec.geometry = g.clone();
        }
        Ok(spec)
    }

    /// The labelled cloud for a run seed, after the optional projection.
    pub fn load(&self, run_seed: u64, base_dir: &Path) -> Result<LabeledCloud> {
        let cloud = if self.kind == DatasetKind::Csv {
            let path = self.path.as_ref().ok_or_else(|| Error::Config("csv dataset needs `path`".into()))?;
            let path = if path.is_relative() { base_dir.join(path) } else { path.clone() };
            let delimiter = u8::try_from(self.delimiter)
                .map_err(|_| Error::Config(format!("delimiter {:?} is not a single byte", self.delimiter)))?;
            let opts = CsvOptions {
                label_column: self.label_column.unwrap_or(usize::MAX),
                delimiter,
                has_header: self.has_header,
            };
            load_csv(path, &opts)?
        } else {
            gen_dataset(&self.spec(run_seed)?)?
        };
        let cloud = match self.pca {
            Some(m) => pca_project(&cloud, m)?.cloud,
            None => cloud,
        };
        Ok(if self.standardize { cloud.standardized() } else { cloud })
    }
}

/// Hidden layers: explicit `widths`, a named `preset` with `depth`, or
/// `depth` layers of `width`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<ArchPreset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub widths: Option<Vec<usize>>,
    pub activation: Activation,
    #[serde(default = "default_slope")]
    pub leaky_slope: f64,
}

fn default_slope() -> f64 {
    0.01
}

impl NetworkConfig {
    pub fn uniform(depth: usize, width: usize, activation: Activation) -> Self {
        NetworkConfig {
            preset: None,
            depth: Some(depth),
            width: Some(width),
            widths: None,
            activation,
            leaky_slope: default_slope(),
        }
    }

    pub fn hidden_widths(&self) -> Result<Vec<usize>> {
        let widths = match (&self.widths, self.preset, self.depth, self.width) {
            (Some(w), None, None, None) => w.clone(),
            (None, Some(p), Some(d), None) => p.hidden_widths(d),
            (None, None, Some(d), Some(w)) => vec![w; d],
            _ => {
                return Err(Error::Config(
                    "network needs exactly one of `widths`, `preset` + `depth`, or `depth` + `width`".into(),
                ))
            }
        };
        if widths.is_empty() {
            return Err(Error::Config("network needs at least one hidden layer".into()));
        }
        Ok(widths)
    }

    pub fn arch(&self, input_dim: usize) -> Result<ArchSpec> {
        let mut widths = vec![input_dim];
        widths.extend(self.hidden_widths()?);
        let arch = ArchSpec {
            widths,
            activation: self.activation,
            leaky_slope: self.leaky_slope,
        };
        arch.validate()?;
        Ok(arch)
    }
}

/// Which classes get a per-layer topological analysis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassSelection {
    A,
    B,
    #[default]
    Both,
}

impl ClassSelection {
    pub fn classes(self) -> Vec<Class> {
        match self {
            ClassSelection::A => vec![Class::A],
            ClassSelection::B => vec![Class::B],
            ClassSelection::Both => Class::BOTH.to_vec(),
        }
    }
}

impl std::str::FromStr for ClassSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(ClassSelection::A),
            "b" | "B" => Ok(ClassSelection::B),
            "both" => Ok(ClassSelection::Both),
            _ => Err(Error::Config(format!("unknown class selection {s:?} (a, b or both)"))),
        }
    }
}

/// Overrides of the per-class [`PhSettings`] and the calibration mode.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TopologyConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_min: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplex_budget: Option<usize>,
    /// Fixed neighbour count and scale; skips calibration entirely.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<u32>,
    /// Re-fit k at every layer against the input β₀.
    pub refit_k: bool,
    /// Re-fit ε at every layer against the input Betti vector.
    pub refit_eps: bool,
    pub classes: ClassSelection,
    /// Known signatures, required for calibrating ingested data.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_a: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_b: Option<Vec<usize>>,
}

impl TopologyConfig {
    pub fn target(&self, kind: DatasetKind, class: Class) -> Option<BettiVector> {
        let manual = match class {
            Class::A => &self.target_a,
            Class::B => &self.target_b,
        };
        manual.clone().map(BettiVector::new).or_else(|| kind.target(class))
    }

    pub fn manual(&self) -> Option<(usize, u32)> {
        self.k.zip(self.eps)
    }

    /// Settings for one class, with the overrides applied.
    pub fn settings(&self, kind: DatasetKind, class: Class) -> PhSettings {
        let mut s = PhSettings::for_dataset(kind, class)
            .or_else(|| self.target(kind, class).map(|t| PhSettings::for_target(&t)))
            .unwrap_or_default();
        if let Some(q) = self.q_max {
            s.q_max = q;
        }
        if let Some(k) = self.k_min {
            s.k_min = k;
        }
        if let Some(k) = self.k_max {
            s.k_max = k;
        }
        if let Some(e) = self.eps_max {
            s.eps_max = e;
        }
        if let Some(b) = self.simplex_budget {
            s.simplex_budget = b;
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seeds: Vec<u64>,
    /// Seeds processed in parallel.
    #[serde(default = "default_jobs")]
    pub jobs: usize,
}

fn default_jobs() -> usize {
    1
}

impl ExperimentConfig {
    pub fn new(dataset: DatasetConfig, network: NetworkConfig, seeds: Vec<u64>) -> Self {
        ExperimentConfig {
            name: None,
            dataset,
            network,
            training: TrainConfig::default(),
            topology: TopologyConfig::default(),
            run: RunConfig { seeds, jobs: default_jobs() },
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        ExperimentConfig::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Appends seeds not already listed.
    pub fn add_seeds(&mut self, seeds: &[u64]) {
        for &s in seeds {
            if !self.run.seeds.contains(&s) {
                self.run.seeds.push(s);
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.run.seeds.is_empty() {
            return Err(Error::Config("at least one seed is required".into()));
        }
        if self.run.jobs == 0 {
            return Err(Error::Config("`jobs` must be at least 1".into()));
        }
        self.network.hidden_widths()?;
        self.training.validate().map_err(|e| Error::Config(e.to_string()))?;
        let d = &self.dataset;
        if !(d.split_ratio > 0.0 && d.split_ratio < 1.0) {
            return Err(Error::Config(format!("split_ratio {} outside (0, 1)", d.split_ratio)));
        }
        if d.kind == DatasetKind::Csv {
            if d.path.is_none() {
                return Err(Error::Config("csv dataset needs `path`".into()));
            }
        } else {
            d.spec(0).and_then(|s| s.validate()).map_err(|e| Error::Config(e.to_string()))?;
        }
        let t = &self.topology;
        if t.k.is_some() != t.eps.is_some() {
            return Err(Error::Config("`k` and `eps` must be given together".into()));
        }
        if t.manual().is_none() {
            for class in t.classes.classes() {
                if t.target(d.kind, class).is_none() {
                    return Err(Error::Config(format!(
                        "no Betti target for class {class}: set `target_{class}` or a manual `k` and `eps`"
                    )));
                }
            }
        }
        for class in t.classes.classes() {
            let s = t.settings(d.kind, class);
            if s.q_max == 0 || s.k_min > s.k_max || s.eps_max == 0 {
                return Err(Error::Config(format!("topology settings for class {class} are out of range")));
            }
        }
        Ok(())
    }
}
