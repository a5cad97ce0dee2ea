// Trains a small ReLU network on the annulus-cluster data, reports the
// generalization gap and round-trips the model through a checkpoint.
//
// `cargo run --release --example train_classifier`

use toponet::geometry::{gen_dataset, split, DatasetKind, DatasetSpec};
use toponet::nn::{accuracy, class_a_probability, generalization_gap, init_network, train, Activation, ArchSpec, Checkpoint, TrainConfig};

pub fn run_example() -> toponet::Result<()> {
    let cloud = gen_dataset(&DatasetSpec::new(DatasetKind::AnnulusCluster, 5))?.standardized();
    let data = split(&cloud, 0.8, 5)?;
    let arch = ArchSpec::uniform(2, 4, 6, Activation::Relu);
    let config = TrainConfig {
        base_rate: 0.01,
        epochs: 2000,
        ..TrainConfig::default()
    };
    let (model, history) = train(init_network(&arch, 5)?, &data, &config)?;
    for (t, r) in history.epochs.iter().enumerate().step_by(200) {
        println!("epoch {t:>4}  loss {:.4}  train {:.3}  test {:.3}  rate {:.5}", r.loss, r.train_acc, r.test_acc, r.rate);
    }
    println!(
        "stopped after {} epochs: train {:.3}, test {:.3}, gap {:+.3}",
        history.len(),
        accuracy(&model, &data.train)?,
        accuracy(&model, &data.test)?,
        generalization_gap(&model, &data)?
    );
    let v = class_a_probability(&model, cloud.points())?;
    let (lo, hi) = v.iter().fold((1.0f64, 0.0f64), |(lo, hi), &p| (lo.min(p), hi.max(p)));
    println!("v(x) ranges over [{lo:.3}, {hi:.3}]");

    let path = std::env::temp_dir().join("toponet-annulus-model.json");
    Checkpoint { model, seed: 5, epochs: history.len() }.save(&path)?;
    let back = Checkpoint::load(&path)?;
    println!("checkpoint {}: reloaded test accuracy {:.3}", path.display(), accuracy(&back.model, &data.test)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> toponet::Result<()> {
    run_example()
}
