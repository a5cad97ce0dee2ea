// How quickly each activation merges the nine disks into one component:
// the first layer at which β₀ of class a reaches 1.
//
// `cargo run --release --example activation_comparison`

use toponet::geometry::{Class, DatasetKind};
use toponet::nn::Activation;
use toponet::pipeline::{run_experiment, ClassSelection, DatasetConfig, ExperimentConfig, NetworkConfig};

pub fn run_example() -> toponet::Result<()> {
    for act in [Activation::Relu, Activation::LeakyRelu, Activation::Tanh] {
        let mut dataset = DatasetConfig::synthetic(DatasetKind::I);
        dataset.points_per_class = Some(1000);
        let mut config = ExperimentConfig::new(dataset, NetworkConfig::uniform(8, 15, act), vec![1]);
        config.training.base_rate = 0.003;
        config.training.epochs = 2000;
        config.training.early_stop = false;
        config.topology.classes = ClassSelection::A;
        let report = run_experiment(&config)?;
        let seed = &report.seeds[0];
        let trace = seed.trace(Class::A).expect("class a analyzed");
        let first = trace.layers.iter().position(|l| l.betti.get(0) == 1).map(|j| j + 1);
        let b0: Vec<String> = trace.layers.iter().map(|l| l.betti.get(0).to_string()).collect();
        println!(
            "{:<10} train {:.3}  β₀ by layer {}  first β₀ = 1 at layer {}",
            act.name(),
            seed.train_accuracy,
            b0.join(" → "),
            first.map_or("never".to_string(), |j| j.to_string())
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> toponet::Result<()> {
    run_example()
}
