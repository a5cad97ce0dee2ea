//! Uniform samplers for the elementary shapes used by the dataset generators
//! and by the homology fixtures (circle, disk, annulus, sphere, torus).

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::PointSet;
use crate::ph::BettiVector;

pub fn circle<R: Rng>(rng: &mut R, out: &mut PointSet, n: usize, center: [f64; 2], radius: f64) {
    for _ in 0..n {
        let t = rng.random::<f64>() * TAU;
        out.push(&[center[0] + radius * t.cos(), center[1] + radius * t.sin()]);
    }
}

pub fn disk<R: Rng>(rng: &mut R, out: &mut PointSet, n: usize, center: [f64; 2], radius: f64) {
    annulus(rng, out, n, center, 0.0, radius);
}

pub fn annulus<R: Rng>(
    rng: &mut R,
    out: &mut PointSet,
    n: usize,
    center: [f64; 2],
    inner: f64,
    outer: f64,
) {
    let (a2, b2) = (inner * inner, outer * outer);
    for _ in 0..n {
        let r = (a2 + rng.random::<f64>() * (b2 - a2)).sqrt();
        let t = rng.random::<f64>() * TAU;
        out.push(&[center[0] + r * t.cos(), center[1] + r * t.sin()]);
    }
}

fn direction<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1e-12 {
            return [v[0] / norm, v[1] / norm, v[2] / norm];
        }
    }
}

/// Points on the 2-sphere surface.
pub fn sphere<R: Rng>(rng: &mut R, out: &mut PointSet, n: usize, center: [f64; 3], radius: f64) {
    for _ in 0..n {
        let d = direction(rng);
        out.push(&[
            center[0] + radius * d[0],
            center[1] + radius * d[1],
            center[2] + radius * d[2],
        ]);
    }
}

/// Points in the solid 3-ball.
pub fn ball<R: Rng>(rng: &mut R, out: &mut PointSet, n: usize, center: [f64; 3], radius: f64) {
    for _ in 0..n {
        let d = direction(rng);
        let r = radius * rng.random::<f64>().cbrt();
        out.push(&[center[0] + r * d[0], center[1] + r * d[1], center[2] + r * d[2]]);
    }
}

/// Points on the surface of a torus of revolution around the z axis.
pub fn torus_surface<R: Rng>(
    rng: &mut R,
    out: &mut PointSet,
    n: usize,
    center: [f64; 3],
    major: f64,
    minor: f64,
) {
    let mut made = 0;
    while made < n {
        let theta = rng.random::<f64>() * TAU;
        let phi = rng.random::<f64>() * TAU;
        // area element is proportional to (R + r cos φ)
        if rng.random::<f64>() * (major + minor) > major + minor * phi.cos() {
            continue;
        }
        let w = major + minor * phi.cos();
        out.push(&[
            center[0] + w * theta.cos(),
            center[1] + w * theta.sin(),
            center[2] + minor * phi.sin(),
        ]);
        made += 1;
    }
}

/// Plane containing the core circle of a [`solid_ring`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingPlane {
    XY,
    XZ,
}

/// Points in a solid torus (a ring with a round tube), uniform in volume.
pub fn solid_ring<R: Rng>(
    rng: &mut R,
    out: &mut PointSet,
    n: usize,
    center: [f64; 3],
    ring_radius: f64,
    tube_radius: f64,
    plane: RingPlane,
) {
    let mut made = 0;
    while made < n {
        let rho = tube_radius * rng.random::<f64>().sqrt();
        let phi = rng.random::<f64>() * TAU;
        let theta = rng.random::<f64>() * TAU;
        if rng.random::<f64>() * (ring_radius + tube_radius) > ring_radius + rho * phi.cos() {
            continue;
        }
        let w = ring_radius + rho * phi.cos();
        let (u, v, h) = (w * theta.cos(), w * theta.sin(), rho * phi.sin());
        let p = match plane {
            RingPlane::XY => [u, v, h],
            RingPlane::XZ => [u, h, v],
        };
        out.push(&[center[0] + p[0], center[1] + p[1], center[2] + p[2]]);
        made += 1;
    }
}

/// Axis-aligned rectangle with circular holes removed, by rejection.
pub fn plate_with_holes<R: Rng>(
    rng: &mut R,
    out: &mut PointSet,
    n: usize,
    lo: [f64; 2],
    hi: [f64; 2],
    holes: &[([f64; 2], f64)],
) {
    let mut made = 0;
    while made < n {
        let p = [
            lo[0] + rng.random::<f64>() * (hi[0] - lo[0]),
            lo[1] + rng.random::<f64>() * (hi[1] - lo[1]),
        ];
        let inside_hole = holes.iter().any(|(c, r)| {
            let (dx, dy) = (p[0] - c[0], p[1] - c[1]);
            dx * dx + dy * dy < r * r
        });
        if !inside_hole {
            out.push(&p);
            made += 1;
        }
    }
}

/// The reference shapes with textbook homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    Circle,
    Disk,
    Annulus,
    Sphere,
    Torus,
}

impl Fixture {
    pub const ALL: [Fixture; 5] = [
        Fixture::Circle,
        Fixture::Disk,
        Fixture::Annulus,
        Fixture::Sphere,
        Fixture::Torus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Circle => "circle",
            Fixture::Disk => "disk",
            Fixture::Annulus => "annulus",
            Fixture::Sphere => "sphere",
            Fixture::Torus => "torus",
        }
    }

    /// Betti numbers of the underlying space, truncated to the dimensions that matter.
    pub fn betti(self) -> BettiVector {
        BettiVector::new(match self {
            Fixture::Circle | Fixture::Annulus => vec![1, 1],
            Fixture::Disk => vec![1, 0],
            Fixture::Sphere => vec![1, 0, 1],
            Fixture::Torus => vec![1, 2, 1],
        })
    }

    pub fn sample(self, n: usize, seed: u64) -> PointSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = match self {
            Fixture::Circle | Fixture::Disk | Fixture::Annulus => 2,
            Fixture::Sphere | Fixture::Torus => 3,
        };
        let mut out = PointSet::new(dim, Vec::with_capacity(n * dim)).expect("dim > 0");
        match self {
            Fixture::Circle => circle(&mut rng, &mut out, n, [0.0, 0.0], 1.0),
            Fixture::Disk => disk(&mut rng, &mut out, n, [0.0, 0.0], 1.0),
            Fixture::Annulus => annulus(&mut rng, &mut out, n, [0.0, 0.0], 1.0, 2.0),
            Fixture::Sphere => sphere(&mut rng, &mut out, n, [0.0; 3], 1.0),
            Fixture::Torus => torus_surface(&mut rng, &mut out, n, [0.0; 3], 1.6, 1.0),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samplers_stay_on_their_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut s = PointSet::new(3, vec![]).unwrap();
        sphere(&mut rng, &mut s, 100, [1.0, 2.0, 3.0], 1.5);
        for p in s.iter() {
            let r = ((p[0] - 1.0).powi(2) + (p[1] - 2.0).powi(2) + (p[2] - 3.0).powi(2)).sqrt();
            assert!((r - 1.5).abs() < 1e-12);
        }
        let mut ring = PointSet::new(3, vec![]).unwrap();
        solid_ring(&mut rng, &mut ring, 200, [0.0; 3], 1.0, 0.25, RingPlane::XZ);
        for p in ring.iter() {
            // core circle lies in the xz plane
            let w = (p[0] * p[0] + p[2] * p[2]).sqrt();
            assert!(((w - 1.0).powi(2) + p[1] * p[1]).sqrt() <= 0.25 + 1e-12);
        }
        let mut a = PointSet::new(2, vec![]).unwrap();
        annulus(&mut rng, &mut a, 200, [0.0, 0.0], 1.0, 2.0);
        for p in a.iter() {
            let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
            assert!((1.0..=2.0).contains(&r));
        }
    }

    #[test]
    fn fixtures_are_deterministic() {
        for f in Fixture::ALL {
            assert_eq!(f.sample(50, 9), f.sample(50, 9));
        }
    }
}
