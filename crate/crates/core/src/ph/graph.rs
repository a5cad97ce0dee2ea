use crate::geometry::PointSet;
use crate::{Error, Result};

/// Symmetrised k-nearest-neighbour graph: `i ~ j` when either is among the
/// other's `k` nearest points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborGraph {
    k: usize,
    adj: Vec<Vec<u32>>,
}

impl NeighborGraph {
    /// Builds a graph from an explicit edge list (used for fixtures and oracles).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidInput(format!("edge ({i}, {j}) outside {n} vertices")));
            }
            if i == j {
                return Err(Error::InvalidInput(format!("self-loop at {i}")));
            }
            adj[i].push(j as u32);
            adj[j].push(i as u32);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Ok(NeighborGraph { k: 0, adj })
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Sorted neighbours of `i`.
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&(j as u32)).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (i, a) in self.adj.iter().enumerate() {
            for &j in a {
                if (j as usize) > i {
                    e.push((i, j as usize));
                }
            }
        }
        e
    }

    /// Connected-component label of every vertex, numbered by first appearance.
    pub fn components(&self) -> (usize, Vec<u32>) {
        let n = self.len();
        let mut comp = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != u32::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s as u32);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v as usize] {
                    if comp[w as usize] == u32::MAX {
                        comp[w as usize] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count as usize, comp)
    }
}

/// Every point's neighbours sorted by Euclidean distance (ties toward the
/// lower index), truncated at `k_max`. Graphs for any `k ≤ k_max` are prefixes.
#[derive(Clone, Debug)]
pub struct KnnTable {
    k_max: usize,
    order: Vec<Vec<u32>>,
}

impl KnnTable {
    pub fn new(points: &PointSet, k_max: usize) -> Result<Self> {
        let n = points.len();
        if k_max == 0 || k_max >= n {
            return Err(Error::InvalidInput(format!("k = {k_max} must satisfy 1 <= k < n = {n}")));
        }
        let mut order = Vec::with_capacity(n);
        let mut row: Vec<(f64, u32)> = Vec::with_capacity(n);
        for i in 0..n {
            let p = points.point(i);
            row.clear();
            for j in 0..n {
                if j != i {
                    let q = points.point(j);
                    let d: f64 = p.iter().zip(q).map(|(x, y)| (x - y) * (x - y)).sum();
                    row.push((d, j as u32));
                }
            }
            let cmp = |a: &(f64, u32), b: &(f64, u32)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
            if k_max < row.len() {
                row.select_nth_unstable_by(k_max - 1, cmp);
                row.truncate(k_max);
            }
            row.sort_unstable_by(cmp);
            order.push(row.iter().map(|&(_, j)| j).collect());
        }
        Ok(KnnTable { k_max, order })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The `r`-th nearest neighbour of `i` (0-based).
    pub fn nth(&self, i: usize, r: usize) -> usize {
        self.order[i][r] as usize
    }

    pub fn graph(&self, k: usize) -> NeighborGraph {
        assert!(k >= 1 && k <= self.k_max, "k out of table range");
        let n = self.order.len();
        let mut adj: Vec<Vec<u32>> = vec![Vec::with_capacity(2 * k); n];
        for i in 0..n {
            for &j in &self.order[i][..k] {
                adj[i].push(j);
                adj[j as usize].push(i as u32);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        NeighborGraph { k, adj }
    }
}

/// Symmetrised kNN graph of `points`. Requires `1 ≤ k < n`.
pub fn knn_graph(points: &PointSet, k: usize) -> Result<NeighborGraph> {
    Ok(KnnTable::new(points, k)?.graph(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> PointSet {
        PointSet::new(1, xs.to_vec()).unwrap()
    }

    #[test]
    fn collinear_tie_goes_to_lower_index() {
        let g = knn_graph(&line(&[0.0, 1.0, 2.0]), 1).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn k_n_minus_one_is_complete() {
        let g = knn_graph(&line(&[0.0, 0.5, 3.0, 7.0, 7.5]), 4).unwrap();
        assert_eq!(g.edges().len(), 10);
    }

    #[test]
    fn far_clusters_stay_apart() {
        let g = knn_graph(&line(&[0.0, 0.1, 0.2, 0.3, 10.0, 10.1, 10.2, 10.3]), 2).unwrap();
        assert_eq!(g.components().0, 2);
    }

    #[test]
    fn k_at_least_n_is_an_error() {
        assert!(knn_graph(&line(&[0.0, 1.0]), 2).is_err());
        assert!(knn_graph(&line(&[0.0, 1.0]), 0).is_err());
    }

    #[test]
    fn duplicate_points_still_connect() {
        let g = knn_graph(&line(&[1.0; 6]), 2).unwrap();
        assert_eq!(g.components().0, 1);
    }
}
