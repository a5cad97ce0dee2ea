// Persistence against brute-force homology on small random graphs, then the
// barcode of a sampled circle.
//
// `cargo run --release --example persistence_oracle`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toponet::geometry::shapes::Fixture;
use toponet::ph::{betti_bruteforce, geodesic_metric, knn_graph, persistent_homology, vr_filtration, NeighborGraph};

pub fn run_example() -> toponet::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut agree = 0;
    let trials = 50;
    for _ in 0..trials {
        let n = rng.random_range(4..=11);
        let p = rng.random_range(0.2..0.6);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rng.random_bool(p))
            .collect();
        let metric = geodesic_metric(&NeighborGraph::from_edges(n, &edges)?);
        let bars = persistent_homology(&vr_filtration(&metric, 2, 3, usize::MAX)?);
        let ok = (1..=3).all(|eps| betti_bruteforce(&metric, eps, 2).is_ok_and(|b| b == bars.betti_at(eps)));
        agree += ok as usize;
    }
    println!("{agree}/{trials} random metrics agree with the rank computation");

    let circle = Fixture::Circle.sample(200, 1);
    let metric = geodesic_metric(&knn_graph(&circle, 6)?);
    let bars = persistent_homology(&vr_filtration(&metric, 1, 6, usize::MAX)?);
    println!("circle, k = 6: betti at eps 1..=6:");
    for eps in 1..=6 {
        println!("  eps {eps}: {}", bars.betti_at(eps));
    }
    let mut csv = Vec::new();
    bars.write_csv(&mut csv)?;
    let text = String::from_utf8(csv).expect("utf8");
    println!("H1 bars:");
    for line in text.lines().filter(|l| l.starts_with("1,")) {
        println!("  {line}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> toponet::Result<()> {
    run_example()
}
