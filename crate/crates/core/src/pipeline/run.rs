use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::report::{history_rows, ClassTrace, LayerTopology, RunStatus, SeedFailure, SeedRecord, SCHEMA_VERSION};
use super::{ExperimentConfig, ExperimentReport};
use crate::geometry::{split, Class, LabeledCloud, Split};
use crate::nn::{
    class_a_probability, generalization_gap, init_network, layer_representations, train, Checkpoint, NetworkModel,
    TrainHistory,
};
use crate::nn::accuracy;
use crate::ph::{analyze_points, betti_fixed, calibrate_eps, calibrate_k, topological_complexity, BettiVector};
use crate::{Error, Result};

/// Independent streams derived from one run seed.
pub(crate) fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const SPLIT_STREAM: u64 = 1;
const INIT_STREAM: u64 = 2;

/// Progress messages; the runner never prints.
pub type Progress<'a> = &'a (dyn Fn(&str) + Sync);

/// Runs every seed of `config`, with relative CSV paths resolved from the
/// working directory.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    Runner::new(config, Path::new("."), &|_| {}).run()
}

/// Stage-by-stage driver behind [`run_experiment`].
pub struct Runner<'a> {
    config: &'a ExperimentConfig,
    base_dir: PathBuf,
    progress: Progress<'a>,
}

/// The trained state of one seed, before any topology.
pub struct TrainedSeed {
    pub seed: u64,
    pub cloud: LabeledCloud,
    pub split: Split,
    pub model: NetworkModel,
    pub history: TrainHistory,
    pub train_accuracy: f64,
    pub test_accuracy: f64,
    pub generalization_gap: f64,
}

impl<'a> Runner<'a> {
    pub fn new(config: &'a ExperimentConfig, base_dir: &Path, progress: Progress<'a>) -> Self {
        Runner {
            config,
            base_dir: base_dir.to_path_buf(),
            progress,
        }
    }

    pub fn load_data(&self, seed: u64) -> Result<LabeledCloud> {
        self.config.dataset.load(seed, &self.base_dir)
    }

    /// Data, split and training for one seed.
    pub fn train_seed(&self, seed: u64) -> Result<TrainedSeed> {
        let cfg = self.config;
        let cloud = self.load_data(seed)?;
        let split = split(&cloud, cfg.dataset.split_ratio, derive_seed(seed, SPLIT_STREAM))?;
        let arch = cfg.network.arch(cloud.dim())?;
        let model = init_network(&arch, derive_seed(seed, INIT_STREAM))?;
        (self.progress)(&format!("seed {seed}: training {} epochs max", cfg.training.epochs));
        let (model, history) = train(model, &split, &cfg.training)?;
        let train_accuracy = accuracy(&model, &split.train)?;
        let test_accuracy = accuracy(&model, &split.test)?;
        Ok(TrainedSeed {
            seed,
            cloud,
            generalization_gap: generalization_gap(&model, &split)?,
            split,
            model,
            history,
            train_accuracy,
            test_accuracy,
        })
    }

    /// The trained model of a checkpoint, evaluated on its seed's data.
    pub fn from_checkpoint(&self, ck: &Checkpoint) -> Result<TrainedSeed> {
        let cloud = self.load_data(ck.seed)?;
        let split = split(&cloud, self.config.dataset.split_ratio, derive_seed(ck.seed, SPLIT_STREAM))?;
        if ck.model.arch.input_dim() != cloud.dim() {
            return Err(Error::InvalidInput(format!(
                "checkpoint expects {}-dimensional input, data has {}",
                ck.model.arch.input_dim(),
                cloud.dim()
            )));
        }
        Ok(TrainedSeed {
            seed: ck.seed,
            train_accuracy: accuracy(&ck.model, &split.train)?,
            test_accuracy: accuracy(&ck.model, &split.test)?,
            generalization_gap: generalization_gap(&ck.model, &split)?,
            split,
            cloud,
            model: ck.model.clone(),
            history: TrainHistory::default(),
        })
    }

    /// Per-layer topology of every selected class.
    pub fn analyze(&self, t: &TrainedSeed, epochs_run: usize) -> Result<SeedRecord> {
        let reps = layer_representations(&t.model, &t.cloud)?;
        let mut classes = Vec::new();
        for class in self.config.topology.classes.classes() {
            (self.progress)(&format!("seed {}: topology of class {class}", t.seed));
            classes.push(self.trace(&t.cloud, &reps, class)?);
        }
        let v = class_a_probability(&t.model, t.split.train.points())?;
        Ok(SeedRecord {
            seed: t.seed,
            epochs_run,
            train_accuracy: t.train_accuracy,
            test_accuracy: t.test_accuracy,
            generalization_gap: t.generalization_gap,
            separation: separation(&v, t.split.train.labels()),
            classes,
            history: history_rows(&t.history),
        })
    }

    fn trace(&self, cloud: &LabeledCloud, reps: &[LabeledCloud], class: Class) -> Result<ClassTrace> {
        let topo = &self.config.topology;
        let kind = self.config.dataset.kind;
        let settings = topo.settings(kind, class);
        let dims = settings.q_max + 1;
        let points = cloud.class_points(class);
        let (k, eps, input_betti) = match topo.manual() {
            Some((k, eps)) => {
                let (b, _) = betti_fixed(&points, k, eps, settings.q_max, settings.simplex_budget)?;
                (k, eps, b.truncated(dims))
            }
            None => {
                let target = topo
                    .target(kind, class)
                    .ok_or_else(|| Error::Config(format!("no Betti target for class {class}")))?;
                let a = analyze_points(&points, &target, &settings)?;
                (a.k, a.eps, a.betti.truncated(dims))
            }
        };
        let layer = |b: BettiVector, k: usize, eps: u32| LayerTopology {
            complexity: topological_complexity(&b),
            betti: b,
            k,
            eps,
        };
        let input = layer(input_betti.clone(), k, eps);
        let mut layers = Vec::with_capacity(reps.len());
        for rep in reps {
            let pts = rep.class_points(class);
            let k_j = if topo.refit_k {
                calibrate_k(&pts, input_betti.get(0), &settings).unwrap_or(k)
            } else {
                k
            };
            let eps_j = if topo.refit_eps {
                calibrate_eps(&pts, k_j, &input_betti, &settings).map_or(eps, |c| c.eps)
            } else {
                eps
            };
            let (b, _) = betti_fixed(&pts, k_j, eps_j, settings.q_max, settings.simplex_budget)?;
            layers.push(layer(b.truncated(dims), k_j, eps_j));
        }
        Ok(ClassTrace { class, input, layers })
    }

    fn seed_record(&self, seed: u64) -> Result<SeedRecord> {
        let t = self.train_seed(seed)?;
        self.analyze(&t, t.history.len())
    }

    /// All seeds, `run.jobs` at a time. Failed seeds are recorded and the
    /// report is flagged partial; it is an error only if every seed fails.
    pub fn run(&self) -> Result<ExperimentReport> {
        let seeds = &self.config.run.seeds;
        let slots: Vec<Mutex<Option<Result<SeedRecord>>>> = seeds.iter().map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        let jobs = self.config.run.jobs.clamp(1, seeds.len().max(1));
        let work = || loop {
            let i = next.fetch_add(1, Ordering::Relaxed);
            if i >= seeds.len() {
                break;
            }
            let r = self.seed_record(seeds[i]);
            *slots[i].lock().expect("slot") = Some(r);
        };
        if jobs == 1 {
            work();
        } else {
            std::thread::scope(|s| {
                for _ in 0..jobs {
                    s.spawn(work);
                }
            });
        }
        let results = slots
            .into_iter()
            .map(|m| m.into_inner().expect("slot").expect("every seed ran"));
        self.assemble(seeds.iter().copied().zip(results).collect())
    }

    /// Report for a single pre-trained model.
    pub fn run_checkpoint(&self, ck: &Checkpoint) -> Result<ExperimentReport> {
        let r = self.from_checkpoint(ck).and_then(|t| self.analyze(&t, ck.epochs));
        self.assemble(vec![(ck.seed, r)])
    }

    fn assemble(&self, results: Vec<(u64, Result<SeedRecord>)>) -> Result<ExperimentReport> {
        let n = results.len();
        let mut records = Vec::new();
        let mut failures = Vec::new();
        let mut last_err = None;
        for (seed, r) in results {
            match r {
                Ok(rec) => records.push(rec),
                Err(e) => {
                    (self.progress)(&format!("seed {seed} failed: {e}"));
                    failures.push(SeedFailure {
                        seed,
                        error: e.to_string(),
                        exit_code: e.exit_code(),
                    });
                    last_err = Some(e);
                }
            }
        }
        if records.is_empty() {
            return Err(Error::AllSeedsFailed {
                seeds: n,
                last: last_err.map_or_else(String::new, |e| e.to_string()),
            });
        }
        let cfg = self.config;
        let hidden_widths = cfg.network.hidden_widths()?;
        let mut report = ExperimentReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            status: if failures.is_empty() { RunStatus::Complete } else { RunStatus::Partial },
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            dataset: cfg.dataset.kind.name().to_string(),
            activation: cfg.network.activation,
            hidden_widths,
            classes: cfg.topology.classes.classes(),
            config: cfg.clone(),
            seeds: records,
            failures,
            aggregates: Vec::new(),
        };
        report.reaggregate();
        report.normalized()
    }
}

fn separation(v: &[f64], labels: &[Class]) -> f64 {
    let (mut min_a, mut max_a, mut min_b, mut max_b) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (&p, &c) in v.iter().zip(labels) {
        match c {
            Class::A => {
                min_a = min_a.min(p);
                max_a = max_a.max(p);
            }
            Class::B => {
                min_b = min_b.min(p);
                max_b = max_b.max(p);
            }
        }
    }
    (min_a - max_b).max(min_b - max_a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separation_of_split_probabilities() {
        let labels = [Class::A, Class::A, Class::B, Class::B];
        assert!((separation(&[0.9, 0.8, 0.1, 0.2], &labels) - 0.6).abs() < 1e-12);
        assert!((separation(&[0.1, 0.2, 0.9, 0.7], &labels) - 0.5).abs() < 1e-12);
        assert!(separation(&[0.5, 0.9, 0.6, 0.1], &labels) < 0.0);
    }

    #[test]
    fn derived_streams_differ() {
        assert_ne!(derive_seed(1, SPLIT_STREAM), derive_seed(1, INIT_STREAM));
        assert_ne!(derive_seed(1, SPLIT_STREAM), derive_seed(2, SPLIT_STREAM));
    }
}
