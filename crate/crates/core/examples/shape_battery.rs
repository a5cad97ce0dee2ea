// Recovers the homology of the reference shapes from point samples.
//
// `cargo run --release --example shape_battery`

use std::time::Instant;

use toponet::geometry::shapes::Fixture;
use toponet::ph::{analyze_points, PhSettings};

pub fn run_example() -> toponet::Result<()> {
    let sizes = [(Fixture::Circle, 200), (Fixture::Disk, 200), (Fixture::Annulus, 300), (Fixture::Sphere, 500), (Fixture::Torus, 800)];
    for (fixture, n) in sizes {
        let points = fixture.sample(n, 1);
        let target = fixture.betti();
        let start = Instant::now();
        let a = analyze_points(&points, &target, &PhSettings::for_target(&target))?;
        println!(
            "{:<8} n={n:<4} k*={:<2} eps*={} betti={} (target {}) in {:.2?}",
            fixture.name(),
            a.k,
            a.eps,
            a.betti,
            target,
            start.elapsed()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> toponet::Result<()> {
    run_example()
}
