// Generates every synthetic dataset at its default density, writes it as CSV
// and recovers one class's Betti signature.
//
// `cargo run --release --example generate_datasets`

use toponet::geometry::{gen_dataset, load_csv, write_csv, Class, CsvOptions, DatasetKind, DatasetSpec};
use toponet::ph::{analyze_points, PhSettings};

pub fn run_example() -> toponet::Result<()> {
    let dir = std::env::temp_dir().join("toponet-datasets");
    std::fs::create_dir_all(&dir)?;
    for kind in [DatasetKind::I, DatasetKind::II, DatasetKind::III, DatasetKind::AnnulusCluster] {
        let spec = DatasetSpec::new(kind, 1);
        let cloud = gen_dataset(&spec)?;
        let path = dir.join(format!("dataset_{}.csv", kind.name()));
        write_csv(&cloud, &path, b',', true)?;
        let back = load_csv(&path, &CsvOptions::label_last(b',', true))?;
        assert_eq!(back.len(), cloud.len());
        println!(
            "{:<16} dim {}  {} + {} points  gap {:.3}  targets a {} b {}",
            kind.name(),
            cloud.dim(),
            cloud.count(Class::A),
            cloud.count(Class::B),
            cloud.min_interclass_distance(),
            kind.target(Class::A).expect("synthetic"),
            kind.target(Class::B).expect("synthetic"),
        );
    }
    println!("csv files in {}", dir.display());

    // the plate with nine holes
    let cloud = gen_dataset(&DatasetSpec::new(DatasetKind::I, 1))?;
    let target = DatasetKind::I.target(Class::B).expect("synthetic");
    let a = analyze_points(&cloud.class_points(Class::B), &target, &PhSettings::for_target(&target))?;
    println!("dataset I class b: betti {} at k = {}, eps = {}", a.betti, a.k, a.eps);
    Ok(())
}

#[allow(dead_code)]
fn main() -> toponet::Result<()> {
    run_example()
}
