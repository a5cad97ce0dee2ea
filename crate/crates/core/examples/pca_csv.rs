// Ingests a CSV of points in R^6 that lie near a tilted plane, projects onto
// two principal components and recovers the loop of one class.
//
// `cargo run --release --example pca_csv`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toponet::geometry::{load_csv, pca_project, Class, CsvOptions};
use toponet::ph::{analyze_points, BettiVector, PhSettings};

pub fn run_example() -> toponet::Result<()> {
    let path = std::env::temp_dir().join("toponet-ring-and-blob.csv");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (u, v) = ([0.6, 0.0, 0.8, 0.0, 0.0, 0.0], [0.0, 0.6, 0.0, 0.0, 0.8, 0.0]);
    let mut text = String::from("x1;x2;x3;x4;x5;x6;label\n");
    for i in 0..400 {
        let (label, s, t) = if i % 2 == 0 {
            let th: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let r = rng.random_range(2.0..2.4);
            ("ring", r * th.cos(), r * th.sin())
        } else {
            ("blob", rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5))
        };
        let row: Vec<String> = (0..6)
            .map(|k| format!("{:.6}", s * u[k] + t * v[k] + rng.random_range(-0.01..0.01)))
            .collect();
        text.push_str(&format!("{};{label}\n", row.join(";")));
    }
    std::fs::write(&path, text)?;

    let cloud = load_csv(&path, &CsvOptions::label_last(b';', true))?;
    let proj = pca_project(&cloud, 2)?;
    let total: f64 = proj.eigenvalues.iter().sum();
    println!(
        "{} points in R^{}; top two components explain {:.2}% of the variance",
        cloud.len(),
        cloud.dim(),
        100.0 * (proj.eigenvalues[0] + proj.eigenvalues[1]) / total
    );
    // labels sort lexically: "blob" is class a, "ring" class b
    let target = BettiVector::new(vec![1, 1]);
    let a = analyze_points(&proj.cloud.class_points(Class::B), &target, &PhSettings::for_target(&target))?;
    println!("ring class after projection: betti {} at k = {}, eps = {}", a.betti, a.k, a.eps);
    Ok(())
}

#[allow(dead_code)]
fn main() -> toponet::Result<()> {
    run_example()
}
