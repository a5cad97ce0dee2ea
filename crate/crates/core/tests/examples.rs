macro_rules! example_test {
    ($name:ident, $file:literal) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect(concat!($file, " should run"));
        }
    };
}

example_test!(generate_datasets, "generate_datasets.rs");
example_test!(shape_battery, "shape_battery.rs");
example_test!(persistence_oracle, "persistence_oracle.rs");
example_test!(pca_csv, "pca_csv.rs");
example_test!(train_classifier, "train_classifier.rs");
example_test!(narrow_width, "narrow_width.rs");
example_test!(layer_topology, "layer_topology.rs");
example_test!(activation_comparison, "activation_comparison.rs");
