// Trains on the nine-disks dataset and follows the Betti numbers of both
// classes through every layer; writes the report and its plots.
//
// `cargo run --release --example layer_topology`

use toponet::geometry::{Class, DatasetKind};
use toponet::nn::Activation;
use toponet::pipeline::{emit_plot, emit_report, render_text, DatasetConfig, ExperimentConfig, NetworkConfig, PlotKind, Runner};

pub fn run_example() -> toponet::Result<()> {
    let mut config = ExperimentConfig::new(
        DatasetConfig::synthetic(DatasetKind::I),
        NetworkConfig::uniform(6, 15, Activation::Relu),
        vec![1],
    );
    config.training.base_rate = 0.003;
    config.training.epochs = 1500;
    config.training.early_stop = false;

    let log = |m: &str| eprintln!("{m}");
    let report = Runner::new(&config, std::path::Path::new("."), &log).run()?;
    print!("{}", render_text(&report, &Class::BOTH)?);

    let dir = std::env::temp_dir().join("toponet-layer-topology");
    std::fs::create_dir_all(&dir)?;
    emit_report(&report, dir.join("report.json"))?;
    for kind in [
        PlotKind::BettiVsLayer { dim: 0 },
        PlotKind::BettiVsLayer { dim: 1 },
        PlotKind::ComplexityVsLayer,
        PlotKind::AccuracyVsEpoch,
    ] {
        emit_plot(&report, kind, dir.join(format!("{}.svg", kind.file_stem())))?;
    }
    println!("report and plots in {}", dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> toponet::Result<()> {
    run_example()
}
