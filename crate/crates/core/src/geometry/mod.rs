//! Labelled point clouds and the ways to obtain them.

mod cloud;
mod csvio;
mod datasets;
mod pca;
pub mod shapes;
mod split;

pub use cloud::{Class, LabeledCloud, PointSet};
pub use csvio::{load_csv, write_csv, CsvOptions};
pub use datasets::{gen_annulus_cluster, gen_dataset, DatasetKind, DatasetSpec, Geometry};
pub use pca::{pca_project, Projection};
pub use split::{split, Split};
