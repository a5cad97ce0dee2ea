use approx::assert_relative_eq;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toponet::geometry::*;

fn anisotropic_cloud(n: usize, d: usize, seed: u64) -> LabeledCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords = Vec::with_capacity(n * d);
    for _ in 0..n {
        let base: Vec<f64> = (0..d).map(|j| rng.random_range(-1.0..1.0) * (d - j) as f64).collect();
        // mix the axes so the principal directions are not coordinate axes
        for j in 0..d {
            coords.push(base[j] + 0.3 * base[(j + 1) % d]);
        }
    }
    let labels = (0..n).map(|i| Class::from_index(i % 2)).collect();
    LabeledCloud::new(PointSet::new(d, coords).unwrap(), labels).unwrap()
}

fn covariance(cloud: &LabeledCloud) -> DMatrix<f64> {
    let n = cloud.len();
    let d = cloud.dim();
    let x = DMatrix::from_row_slice(n, d, cloud.points().coords());
    let mean = x.row_mean();
    let mut c = x.clone();
    for mut row in c.row_iter_mut() {
        row -= &mean;
    }
    c.transpose() * &c / (n as f64 - 1.0)
}

#[test]
fn pca_agrees_with_a_reference_eigensolver() {
    for (d, seed) in [(3, 1), (5, 2), (8, 3)] {
        let cloud = anisotropic_cloud(300, d, seed);
        let proj = pca_project(&cloud, 2).unwrap();
        let mut reference: Vec<f64> = SymmetricEigen::new(covariance(&cloud)).eigenvalues.iter().copied().collect();
        reference.sort_by(|a, b| b.total_cmp(a));
        for (got, want) in proj.eigenvalues.iter().zip(&reference) {
            assert_relative_eq!(*got, *want, epsilon = 1e-8, max_relative = 1e-8);
        }
        // variance captured along each kept direction
        for (j, row) in proj.components.iter().enumerate() {
            let coords: Vec<f64> = proj.cloud.points().iter().map(|p| p[j]).collect();
            let mean = coords.iter().sum::<f64>() / coords.len() as f64;
            let var = coords.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (coords.len() as f64 - 1.0);
            assert_relative_eq!(var, reference[j], max_relative = 1e-8);
            assert_eq!(row.len(), d);
        }
        for a in &proj.components {
            for b in &proj.components {
                let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                let want = if std::ptr::eq(a, b) { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-10);
            }
        }
        assert_eq!(proj.cloud.labels(), cloud.labels());
    }
}

#[test]
fn csv_round_trip_preserves_the_cloud() {
    let cloud = gen_annulus_cluster(120, 8, &Geometry::default(), 0.3).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cloud.csv");
    write_csv(&cloud, &path, b',', true).unwrap();
    let back = load_csv(&path, &CsvOptions::label_last(b',', true)).unwrap();
    assert_eq!(back.labels(), cloud.labels());
    for (p, q) in cloud.points().iter().zip(back.points().iter()) {
        for (x, y) in p.iter().zip(q) {
            assert_relative_eq!(x, y, max_relative = 1e-8);
        }
    }
}

#[test]
fn every_dataset_keeps_its_classes_apart() {
    for kind in [DatasetKind::I, DatasetKind::II, DatasetKind::III] {
        let spec = DatasetSpec::new(kind, 4).with_points(600);
        let cloud = gen_dataset(&spec).unwrap();
        assert_eq!(cloud.count(Class::A), 600);
        assert_eq!(cloud.count(Class::B), 600);
        assert!(cloud.min_interclass_distance() >= spec.gap);
        assert_eq!(Some(cloud.dim()), kind.ambient_dim());
    }
}

#[test]
fn single_point_classes_are_valid() {
    let cloud = gen_annulus_cluster(1, 3, &Geometry::default(), 0.3).unwrap();
    assert_eq!(cloud.len(), 2);
    for class in Class::BOTH {
        let pts = cloud.class_points(class);
        let s = toponet::ph::PhSettings::for_target(&toponet::ph::BettiVector::new(vec![1]));
        assert_eq!(toponet::ph::calibrate_k(&pts, 1, &s).unwrap(), 0);
    }
}
