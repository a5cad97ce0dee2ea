//! Topology of hidden-layer representations in small feedforward classifiers.
//!
//! The crate is organised in four layers that build on each other:
//!
//! - [`geometry`]: labelled point clouds, synthetic datasets with a known Betti
//!   signature, CSV ingestion, PCA projection and stratified splits.
//! - [`ph`]: k-nearest-neighbour graphs, the hop-count (graph geodesic) metric,
//!   Vietoris–Rips filtrations, persistence over the two-element field,
//!   calibration of the `(k, ε)` pair, and a brute-force rank oracle.
//! - [`nn`]: fully connected binary classifiers trained with full-batch Adam on
//!   softmax cross-entropy, exposing every layer's image of the data.
//! - [`pipeline`]: experiment configs, multi-seed runs, JSON reports, text
//!   progressions and SVG plots.
//!
//! ```no_run
//! use toponet::geometry::{gen_dataset, Class, DatasetKind, DatasetSpec};
//! use toponet::ph::{analyze_points, PhSettings};
//!
//! let spec = DatasetSpec::new(DatasetKind::I, 7);
//! let cloud = gen_dataset(&spec).unwrap();
//! let target = DatasetKind::I.target(Class::B).unwrap();
//! let analysis = analyze_points(&cloud.class_points(Class::B), &target, &PhSettings::for_target(&target)).unwrap();
//! assert_eq!(analysis.betti, target);
//! ```

pub mod error;
pub mod geometry;
pub mod nn;
pub mod ph;
pub mod pipeline;

mod numfmt;

pub use error::{Error, Result};
