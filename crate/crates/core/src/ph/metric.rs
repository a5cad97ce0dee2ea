use std::collections::VecDeque;

use super::NeighborGraph;

/// A hop-count metric as seen by the filtration builder.
pub trait HopMetric {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Vertices `j > i` with `dist(i, j) ≤ radius`, ascending by `j`, with
    /// their distances. Implementations may cap the supported radius.
    fn upper_ball(&self, i: usize, radius: u32) -> Vec<(u32, u32)>;
}

/// Dense all-pairs hop counts; `None` means the vertices lie in different
/// graph components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicMetric {
    n: usize,
    dist: Vec<u32>,
}

const UNREACHED: u32 = u32::MAX;

impl GeodesicMetric {
    /// Builds a metric from a full matrix; `None` entries are infinite.
    pub fn from_matrix(rows: &[Vec<Option<u32>>]) -> Self {
        let n = rows.len();
        let dist = rows
            .iter()
            .flat_map(|r| r.iter().map(|d| d.unwrap_or(UNREACHED)))
            .collect();
        GeodesicMetric { n, dist }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        let d = self.dist[i * self.n + j];
        (d != UNREACHED).then_some(d)
    }
}

impl HopMetric for GeodesicMetric {
    fn len(&self) -> usize {
        self.n
    }

    fn upper_ball(&self, i: usize, radius: u32) -> Vec<(u32, u32)> {
        let row = &self.dist[i * self.n..(i + 1) * self.n];
        (i + 1..self.n)
            .filter(|&j| row[j] <= radius)
            .map(|j| (j as u32, row[j]))
            .collect()
    }
}

/// Breadth-first hop counts from `src`, stopping beyond `radius`.
fn bfs(graph: &NeighborGraph, src: usize, radius: u32, seen: &mut [u32], out: &mut Vec<(u32, u32)>) {
    let mut queue = VecDeque::new();
    seen[src] = 0;
    queue.push_back(src as u32);
    out.push((src as u32, 0));
    while let Some(v) = queue.pop_front() {
        let dv = seen[v as usize];
        if dv == radius {
            continue;
        }
        for &w in graph.neighbors(v as usize) {
            if seen[w as usize] == UNREACHED {
                seen[w as usize] = dv + 1;
                out.push((w, dv + 1));
                queue.push_back(w);
            }
        }
    }
}

/// All-pairs shortest hop counts by one breadth-first search per source.
pub fn geodesic_metric(graph: &NeighborGraph) -> GeodesicMetric {
    let n = graph.len();
    let mut dist = vec![UNREACHED; n * n];
    let mut visited = Vec::new();
    for s in 0..n {
        visited.clear();
        bfs(graph, s, UNREACHED - 1, &mut dist[s * n..(s + 1) * n], &mut visited);
    }
    GeodesicMetric { n, dist }
}

/// Hop counts up to a fixed radius only, stored as per-vertex upper balls.
/// Memory grows with ball size rather than `n²`.
#[derive(Clone, Debug)]
pub struct LocalGeodesic {
    radius: u32,
    balls: Vec<Vec<(u32, u32)>>,
}

impl LocalGeodesic {
    pub fn new(graph: &NeighborGraph, radius: u32) -> Self {
        let n = graph.len();
        let mut seen = vec![UNREACHED; n];
        let mut visited = Vec::new();
        let mut balls = Vec::with_capacity(n);
        for s in 0..n {
            visited.clear();
            bfs(graph, s, radius, &mut seen, &mut visited);
            let mut ball: Vec<(u32, u32)> = visited.iter().copied().filter(|&(j, _)| j as usize > s).collect();
            ball.sort_unstable();
            for &(j, _) in &visited {
                seen[j as usize] = UNREACHED;
            }
            balls.push(ball);
        }
        LocalGeodesic { radius, balls }
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }
}

impl HopMetric for LocalGeodesic {
    fn len(&self) -> usize {
        self.balls.len()
    }

    fn upper_ball(&self, i: usize, radius: u32) -> Vec<(u32, u32)> {
        assert!(radius <= self.radius, "radius {radius} beyond the stored {}", self.radius);
        self.balls[i].iter().copied().filter(|&(_, d)| d <= radius).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_complete_graphs() {
        let path = NeighborGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let m = geodesic_metric(&path);
        assert_eq!(m.get(0, 2), Some(2));
        assert_eq!(m.get(1, 1), Some(0));
        let k4 = NeighborGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let m = geodesic_metric(&k4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.get(i, j), Some(u32::from(i != j)));
            }
        }
    }

    #[test]
    fn components_are_infinitely_far() {
        let g = NeighborGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let m = geodesic_metric(&g);
        assert_eq!(m.get(0, 3), None);
        assert_eq!(m.upper_ball(0, 10), vec![(1, 1)]);
    }

    #[test]
    fn local_balls_agree_with_dense_metric() {
        let edges: Vec<_> = (0..9).map(|i| (i, i + 1)).chain([(0, 5), (3, 8)]).collect();
        let g = NeighborGraph::from_edges(10, &edges).unwrap();
        let dense = geodesic_metric(&g);
        let local = LocalGeodesic::new(&g, 2);
        for i in 0..10 {
            assert_eq!(local.upper_ball(i, 2), dense.upper_ball(i, 2));
            assert_eq!(local.upper_ball(i, 1), dense.upper_ball(i, 1));
        }
    }
}
