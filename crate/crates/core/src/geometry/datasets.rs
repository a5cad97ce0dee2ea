//! Synthetic binary datasets with prescribed Betti signatures.
//!
//! | kind | class a | class b |
//! |------|---------|---------|
//! | I    | nine disks, `(9, 0)` | plate with nine holes, `(1, 9)` |
//! | II   | nine solid rings, `(9, 9, 0)` | nine solid rings, each linked with one of class a, `(9, 9, 0)` |
//! | III  | nine spheres, `(9, 0, 9)` | nine enclosing spheres plus nine inner balls, `(18, 0, 9)` |
//! | annulus-cluster | disk in the hole, `(1, 0)` | annulus, `(1, 1)` |

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::cloud::sq_dist;
use super::shapes::{self, RingPlane};
use super::{Class, LabeledCloud, PointSet};
use crate::ph::BettiVector;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DatasetKind {
    I,
    II,
    III,
    #[serde(rename = "annulus-cluster")]
    AnnulusCluster,
    #[serde(rename = "csv")]
    Csv,
}

impl DatasetKind {
    pub fn ambient_dim(self) -> Option<usize> {
        match self {
            DatasetKind::I | DatasetKind::AnnulusCluster => Some(2),
            DatasetKind::II | DatasetKind::III => Some(3),
            DatasetKind::Csv => None,
        }
    }

    /// Known Betti signature of one class; `None` for ingested data.
    pub fn target(self, class: Class) -> Option<BettiVector> {
        let v = match (self, class) {
            (DatasetKind::I, Class::A) => vec![9, 0],
            (DatasetKind::I, Class::B) => vec![1, 9],
            (DatasetKind::II, _) => vec![9, 9, 0],
            (DatasetKind::III, Class::A) => vec![9, 0, 9],
            (DatasetKind::III, Class::B) => vec![18, 0, 9],
            (DatasetKind::AnnulusCluster, Class::A) => vec![1, 0],
            (DatasetKind::AnnulusCluster, Class::B) => vec![1, 1],
            (DatasetKind::Csv, _) => return None,
        };
        Some(BettiVector::new(v))
    }

    pub fn default_points_per_class(self) -> usize {
        match self {
            DatasetKind::I => 2000,
            DatasetKind::II => 2700,
            DatasetKind::III => 3000,
            DatasetKind::AnnulusCluster => 500,
            DatasetKind::Csv => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DatasetKind::I => "I",
            DatasetKind::II => "II",
            DatasetKind::III => "III",
            DatasetKind::AnnulusCluster => "annulus-cluster",
            DatasetKind::Csv => "csv",
        }
    }
}

impl std::str::FromStr for DatasetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "I" | "1" => DatasetKind::I,
            "II" | "2" => DatasetKind::II,
            "III" | "3" => DatasetKind::III,
            "annulus-cluster" | "annulus" => DatasetKind::AnnulusCluster,
            "csv" => DatasetKind::Csv,
            _ => return Err(Error::InvalidInput(format!("unknown dataset kind {s:?}"))),
        })
    }
}

/// Shape parameters in generator units. Each kind reads only its own fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Geometry {
    pub cell_size: f64,
    pub disk_radius: f64,
    pub hole_radius: f64,
    pub ring_radius: f64,
    pub tube_radius: f64,
    pub ring_spacing: f64,
    pub ball_radius: f64,
    pub middle_radius: f64,
    pub outer_radius: f64,
    pub sphere_spacing: f64,
    /// Share of each class-b unit of dataset III that goes to the outer sphere.
    pub outer_share: f64,
    pub cluster_radius: f64,
    pub annulus_inner: f64,
    pub annulus_outer: f64,
}

impl Default for Geometry {
    fn default() -> Self {
        Geometry {
            cell_size: 4.0,
            disk_radius: 0.8,
            hole_radius: 1.2,
            ring_radius: 1.0,
            tube_radius: 0.25,
            ring_spacing: 5.0,
            ball_radius: 0.5,
            middle_radius: 1.0,
            outer_radius: 1.5,
            sphere_spacing: 4.0,
            outer_share: 0.85,
            cluster_radius: 1.0,
            annulus_inner: 1.5,
            annulus_outer: 2.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub kind: DatasetKind,
    pub points_per_class: usize,
    /// Standard deviation of the optional isotropic Gaussian jitter.
    pub noise_sigma: f64,
    /// Minimum Euclidean distance between the two classes.
    pub gap: f64,
    pub seed: u64,
    pub geometry: Geometry,
}

impl DatasetSpec {
    pub fn new(kind: DatasetKind, seed: u64) -> Self {
        DatasetSpec {
            kind,
            points_per_class: kind.default_points_per_class(),
            noise_sigma: 0.0,
            gap: 0.3,
            seed,
            geometry: Geometry::default(),
        }
    }

    pub fn with_points(mut self, n: usize) -> Self {
        self.points_per_class = n;
        self
    }

    /// Number of connected components of each class.
    fn components(&self) -> [usize; 2] {
        match self.kind {
            DatasetKind::I => [9, 1],
            DatasetKind::II => [9, 9],
            DatasetKind::III => [9, 18],
            DatasetKind::AnnulusCluster => [1, 1],
            DatasetKind::Csv => [0, 0],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.geometry;
        let bad = |msg: String| Err(Error::Geometry(msg));
        if !(self.gap > 0.0) {
            return bad(format!("separation gap must be positive, got {}", self.gap));
        }
        if !(self.noise_sigma >= 0.0) {
            return bad(format!("noise sigma must be non-negative, got {}", self.noise_sigma));
        }
        let comps = self.components();
        if self.points_per_class == 0 {
            return Err(Error::InvalidInput("zero points requested".into()));
        }
        if self.points_per_class < comps[0].max(comps[1]) {
            return Err(Error::InvalidInput(format!(
                "{} points per class cannot cover {} components",
                self.points_per_class,
                comps[0].max(comps[1])
            )));
        }
        match self.kind {
            DatasetKind::I => {
                if !(g.disk_radius > 0.0) || g.hole_radius - g.disk_radius < self.gap {
                    return bad(format!(
                        "hole radius {} must exceed disk radius {} by the gap {}",
                        g.hole_radius, g.disk_radius, self.gap
                    ));
                }
                if 2.0 * g.hole_radius >= g.cell_size {
                    return bad("holes must not touch the cell boundary".into());
                }
            }
            DatasetKind::II => {
                if !(g.tube_radius > 0.0) || g.ring_radius - 2.0 * g.tube_radius < self.gap {
                    return bad(format!(
                        "linked rings of radius {} with tube {} are closer than the gap {}",
                        g.ring_radius, g.tube_radius, self.gap
                    ));
                }
                if g.ring_spacing - 3.0 * g.ring_radius - 2.0 * g.tube_radius < self.gap {
                    return bad("ring units overlap on the grid".into());
                }
            }
            DatasetKind::III => {
                if !(g.ball_radius > 0.0)
                    || g.middle_radius - g.ball_radius < self.gap
                    || g.outer_radius - g.middle_radius < self.gap
                {
                    return bad("concentric radii must be increasing by at least the gap".into());
                }
                if g.sphere_spacing - 2.0 * g.outer_radius < self.gap {
                    return bad("sphere units overlap on the grid".into());
                }
                if !(g.outer_share > 0.0 && g.outer_share < 1.0) {
                    return bad("outer_share must lie in (0, 1)".into());
                }
            }
            DatasetKind::AnnulusCluster => {
                if g.annulus_inner >= g.annulus_outer {
                    return bad(format!(
                        "annulus inner radius {} must be below outer radius {}",
                        g.annulus_inner, g.annulus_outer
                    ));
                }
                if !(g.cluster_radius > 0.0) || g.cluster_radius > g.annulus_inner - self.gap {
                    return bad(format!(
                        "cluster radius {} must stay below annulus inner radius {} minus the gap",
                        g.cluster_radius, g.annulus_inner
                    ));
                }
            }
            DatasetKind::Csv => {
                return Err(Error::InvalidInput(
                    "csv datasets are loaded with load_csv, not generated".into(),
                ))
            }
        }
        Ok(())
    }
}

/// Splits `n` into `parts` near-equal shares, larger shares first.
fn shares(n: usize, parts: usize) -> impl Iterator<Item = usize> {
    (0..parts).map(move |i| n / parts + usize::from(i < n % parts))
}

fn grid3() -> impl Iterator<Item = (f64, f64)> {
    (0..3).flat_map(|i| (0..3).map(move |j| (i as f64, j as f64)))
}

/// Samples a cloud for `spec`; identical specs give identical clouds.
pub fn gen_dataset(spec: &DatasetSpec) -> Result<LabeledCloud> {
    spec.validate()?;
    let g = &spec.geometry;
    let n = spec.points_per_class;
    let dim = spec.kind.ambient_dim().expect("validated kind");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut a = PointSet::new(dim, Vec::with_capacity(n * dim))?;
    let mut b = PointSet::new(dim, Vec::with_capacity(n * dim))?;
    match spec.kind {
        DatasetKind::I => {
            let mut holes = Vec::with_capacity(9);
            for ((i, j), m) in grid3().zip(shares(n, 9)) {
                let c = [(i + 0.5) * g.cell_size, (j + 0.5) * g.cell_size];
                shapes::disk(&mut rng, &mut a, m, c, g.disk_radius);
                holes.push((c, g.hole_radius));
            }
            let side = 3.0 * g.cell_size;
            shapes::plate_with_holes(&mut rng, &mut b, n, [0.0, 0.0], [side, side], &holes);
        }
        DatasetKind::II => {
            let units: Vec<_> = grid3().collect();
            for (&(i, j), m) in units.iter().zip(shares(n, 9)) {
                let c = [i * g.ring_spacing, j * g.ring_spacing, 0.0];
                shapes::solid_ring(&mut rng, &mut a, m, c, g.ring_radius, g.tube_radius, RingPlane::XY);
            }
            for (&(i, j), m) in units.iter().zip(shares(n, 9)) {
                // passes through the hole of the class-a ring of the same unit
                let c = [i * g.ring_spacing + g.ring_radius, j * g.ring_spacing, 0.0];
                shapes::solid_ring(&mut rng, &mut b, m, c, g.ring_radius, g.tube_radius, RingPlane::XZ);
            }
        }
        DatasetKind::III => {
            let units: Vec<_> = grid3().collect();
            for (&(i, j), m) in units.iter().zip(shares(n, 9)) {
                let c = [i * g.sphere_spacing, j * g.sphere_spacing, 0.0];
                shapes::sphere(&mut rng, &mut a, m, c, g.middle_radius);
            }
            for (&(i, j), m) in units.iter().zip(shares(n, 9)) {
                let c = [i * g.sphere_spacing, j * g.sphere_spacing, 0.0];
                let outer = ((m as f64) * g.outer_share).round().clamp(1.0, (m - 1) as f64) as usize;
                shapes::sphere(&mut rng, &mut b, outer, c, g.outer_radius);
                shapes::ball(&mut rng, &mut b, m - outer, c, g.ball_radius);
            }
        }
        DatasetKind::AnnulusCluster => {
            shapes::disk(&mut rng, &mut a, n, [0.0, 0.0], g.cluster_radius);
            shapes::annulus(&mut rng, &mut b, n, [0.0, 0.0], g.annulus_inner, g.annulus_outer);
        }
        DatasetKind::Csv => unreachable!("rejected by validate"),
    }
    if spec.noise_sigma > 0.0 {
        jitter(&mut rng, &mut a, &mut b, spec.noise_sigma, spec.gap);
    }
    let cloud = assemble(a, b);
    let sep = cloud.min_interclass_distance();
    if sep < spec.gap {
        return Err(Error::Geometry(format!(
            "sampled classes are {sep} apart, below the gap {}",
            spec.gap
        )));
    }
    Ok(cloud)
}

/// Class-a points first, then class-b points.
fn assemble(a: PointSet, b: PointSet) -> LabeledCloud {
    let (na, nb) = (a.len(), b.len());
    let mut coords = a.coords().to_vec();
    coords.extend_from_slice(b.coords());
    let mut labels = vec![Class::A; na];
    labels.extend(std::iter::repeat_n(Class::B, nb));
    LabeledCloud::from_parts_unchecked(PointSet::new(a.dim(), coords).expect("dim > 0"), labels)
}

/// Adds Gaussian jitter, redrawing any class-b offset that lands within `gap`
/// of class a. Nominal positions already respect the gap, so a point that keeps
/// failing falls back to its nominal position.
fn jitter<R: Rng>(rng: &mut R, a: &mut PointSet, b: &mut PointSet, sigma: f64, gap: f64) {
    let normal = Normal::new(0.0, sigma).expect("sigma > 0");
    let dim = a.dim();
    let mut shake = |set: &PointSet| {
        let coords = set.coords().iter().map(|&x| x + normal.sample(rng)).collect();
        PointSet::new(dim, coords).expect("dim > 0")
    };
    let ja = shake(a);
    let nominal_b = b.clone();
    let mut jb = shake(b);
    for _ in 0..32 {
        let offenders: Vec<usize> = (0..jb.len())
            .filter(|&i| ja.iter().any(|p| sq_dist(p, jb.point(i)) < gap * gap))
            .collect();
        if offenders.is_empty() {
            break;
        }
        let mut coords = jb.coords().to_vec();
        for &i in &offenders {
            for d in 0..dim {
                coords[i * dim + d] = nominal_b.point(i)[d] + normal.sample(rng);
            }
        }
        jb = PointSet::new(dim, coords).expect("dim > 0");
    }
    let mut coords = jb.coords().to_vec();
    for i in 0..jb.len() {
        if ja.iter().any(|p| sq_dist(p, jb.point(i)) < gap * gap) {
            coords[i * dim..(i + 1) * dim].copy_from_slice(nominal_b.point(i));
        }
    }
    jb = PointSet::new(dim, coords).expect("dim > 0");
    // a nominal class-b point may still sit near a jittered class-a point
    let mut coords_a = ja.coords().to_vec();
    for i in 0..ja.len() {
        if jb.iter().any(|q| sq_dist(ja.point(i), q) < gap * gap) {
            coords_a[i * dim..(i + 1) * dim].copy_from_slice(a.point(i));
        }
    }
    *a = PointSet::new(dim, coords_a).expect("dim > 0");
    *b = jb;
}

/// The annulus-cluster cloud: class b fills an annulus, class a a disk inside its hole.
pub fn gen_annulus_cluster(n: usize, seed: u64, geometry: &Geometry, gap: f64) -> Result<LabeledCloud> {
    let spec = DatasetSpec {
        kind: DatasetKind::AnnulusCluster,
        points_per_class: n,
        noise_sigma: 0.0,
        gap,
        seed,
        geometry: geometry.clone(),
    };
    let cloud = gen_dataset(&spec)?;
    // no line separates the classes when the cluster sits inside the hole
    let cluster = cloud.class_points(Class::A);
    let mut centroid = [0.0; 2];
    for p in cluster.iter() {
        centroid[0] += p[0] / cluster.len() as f64;
        centroid[1] += p[1] / cluster.len() as f64;
    }
    let r = (centroid[0].powi(2) + centroid[1].powi(2)).sqrt();
    if r >= geometry.annulus_inner {
        return Err(Error::Geometry("cluster centre escaped the annulus hole".into()));
    }
    Ok(cloud)
}
