//! Persistent homology under the k-nearest-neighbour hop-count metric.
//!
//! Pipeline: [`knn_graph`] → [`geodesic_metric`] (or the radius-bounded
//! [`LocalGeodesic`]) → [`vr_filtration`] → [`persistent_homology`] →
//! [`BarcodeSet::betti_at`]. [`calibrate_k`] and [`calibrate_eps`] pick the
//! neighbour count and scale that reproduce a known Betti signature;
//! [`betti_bruteforce`] is an independent rank-based check on small inputs.

mod betti;
mod calibrate;
mod filtration;
mod graph;
mod metric;
mod oracle;
mod persistence;

pub use betti::{topological_complexity, BettiVector};
pub use calibrate::{
    analyze_points, betti_fixed, calibrate_eps, calibrate_k, Analysis, EpsCalibration, PhSettings,
};
pub use filtration::{vr_filtration, FilteredComplex, Simplex};
pub use graph::{knn_graph, KnnTable, NeighborGraph};
pub use metric::{geodesic_metric, GeodesicMetric, HopMetric, LocalGeodesic};
pub use oracle::{betti_bruteforce, DEFAULT_ORACLE_CAP};
pub use persistence::{betti_at, persistent_homology, Bar, BarcodeSet};
