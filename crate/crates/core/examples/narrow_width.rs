// Width 2 is not enough: tanh networks whose hidden layers all have two
// neurons cannot separate a disk from the annulus around it, while width 3
// can.
//
// `cargo run --release --example narrow_width`

use toponet::geometry::{gen_dataset, split, DatasetKind, DatasetSpec};
use toponet::nn::{accuracy, init_network, train, Activation, ArchSpec, TrainConfig};

pub fn run_example() -> toponet::Result<()> {
    let config = TrainConfig {
        epochs: 2000,
        ..TrainConfig::default()
    };
    for (width, depth) in [(2, 4), (2, 6), (3, 4)] {
        let mut best = 0.0f64;
        for seed in 1..=3 {
            let cloud = gen_dataset(&DatasetSpec::new(DatasetKind::AnnulusCluster, seed))?.standardized();
            let data = split(&cloud, 0.8, seed)?;
            let arch = ArchSpec::uniform(2, depth, width, Activation::Tanh);
            let (model, _) = train(init_network(&arch, seed)?, &data, &config)?;
            best = best.max(accuracy(&model, &data.train)?);
        }
        println!("width {width}, depth {depth}: best train accuracy over 3 seeds {best:.4}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> toponet::Result<()> {
    run_example()
}
