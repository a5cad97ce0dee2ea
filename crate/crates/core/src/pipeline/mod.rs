//! Multi-seed experiments: config in, report, text tables and plots out.
//!
//! ```no_run
//! use toponet::pipeline::{betti_progression, run_experiment, ExperimentConfig};
//! use toponet::geometry::Class;
//!
//! let config = ExperimentConfig::load("configs/dataset_i.toml").unwrap();
//! let report = run_experiment(&config).unwrap();
//! println!("{}", betti_progression(&report, Class::A, Some(0)).unwrap());
//! ```

mod config;
mod plot;
mod progression;
mod report;
mod run;

pub use config::{ClassSelection, DatasetConfig, ExperimentConfig, NetworkConfig, RunConfig, TopologyConfig};
pub use plot::{emit_plot, render_plot, PlotKind};
pub use progression::{betti_progression, render_text, Progression, ProgressionRow};
pub use report::{
    emit_report, load_report, ClassAggregate, ClassTrace, ExperimentReport, HistoryRow, LayerTopology, RunStatus,
    SeedFailure, SeedRecord, SCHEMA_VERSION,
};
pub use run::{run_experiment, Progress, Runner, TrainedSeed};
