use std::collections::{HashMap, HashSet};
use std::io::Write;

use super::filtration::{Simplex, MAX_SIMPLEX_DIM};
use super::{BettiVector, FilteredComplex};
use crate::Result;

/// A persistence interval `[birth, death)`; `death == None` is infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bar {
    pub birth: u32,
    pub death: Option<u32>,
}

impl Bar {
    pub fn is_infinite(&self) -> bool {
        self.death.is_none()
    }

    pub fn alive_at(&self, eps: u32) -> bool {
        self.birth <= eps && self.death.is_none_or(|d| eps < d)
    }
}

/// Bars per homology dimension `0..=q_max`, each list sorted.
///
/// Computed from a filtration truncated at `eps_max`: a bar reported as
/// infinite may die at a larger scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarcodeSet {
    pub q_max: usize,
    pub eps_max: u32,
    pub bars: Vec<Vec<Bar>>,
}

impl BarcodeSet {
    pub fn dim(&self, j: usize) -> &[Bar] {
        self.bars.get(j).map_or(&[], Vec::as_slice)
    }

    /// `β_j(ε)` = number of bars of dimension `j` alive at `eps`.
    pub fn betti_at(&self, eps: u32) -> BettiVector {
        BettiVector::new(
            self.bars
                .iter()
                .map(|bars| bars.iter().filter(|b| b.alive_at(eps)).count())
                .collect(),
        )
    }

    /// CSV lines `dimension,birth,death` with `inf` for infinite deaths.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "dimension,birth,death")?;
        for (j, bars) in self.bars.iter().enumerate() {
            for b in bars {
                match b.death {
                    Some(d) => writeln!(w, "{j},{},{d}", b.birth)?,
                    None => writeln!(w, "{j},{},inf", b.birth)?,
                }
            }
        }
        Ok(())
    }
}

/// Free-function form of [`BarcodeSet::betti_at`].
pub fn betti_at(barcodes: &BarcodeSet, eps: u32) -> BettiVector {
    barcodes.betti_at(eps)
}

type Key = (u32, [u32; MAX_SIMPLEX_DIM + 1]);

fn key_of(s: &Simplex) -> Key {
    let mut v = [0; MAX_SIMPLEX_DIM + 1];
    v[..s.vertices().len()].copy_from_slice(s.vertices());
    (s.value, v)
}

#[derive(Clone, Copy)]
enum Owner {
    Plain(u32),
    Stored(u32),
}

/// Cofaces of `sigma` as filtration keys, unordered.
fn cofaces(nbrs: &[Vec<(u32, u32)>], sigma: &Simplex, out: &mut Vec<Key>) {
    out.clear();
    let v = sigma.vertices();
    let d = v.len();
    let mut cursor = [0usize; MAX_SIMPLEX_DIM + 1];
    'cand: for &(u, du) in &nbrs[v[0] as usize] {
        let mut value = sigma.value.max(du);
        for i in 1..d {
            let list = &nbrs[v[i] as usize];
            let c = &mut cursor[i];
            while *c < list.len() && list[*c].0 < u {
                *c += 1;
            }
            match list.get(*c) {
                Some(&(w, dw)) if w == u => value = value.max(dw),
                _ => continue 'cand,
            }
        }
        if v.contains(&u) {
            continue;
        }
        let mut verts = [0; MAX_SIMPLEX_DIM + 1];
        let at = v.partition_point(|&x| x < u);
        verts[..at].copy_from_slice(&v[..at]);
        verts[at] = u;
        verts[at + 1..=d].copy_from_slice(&v[at..]);
        out.push((value, verts));
    }
}

/// Symmetric difference of two ascending lists into `out`.
fn add_columns(a: &[Key], b: &[Key], out: &mut Vec<Key>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Persistence pairs over the two-element field.
///
/// Reduces the coboundary matrix rather than the boundary matrix: columns are
/// the simplices of dimension `d ≤ q_max` in reverse filtration order, the
/// pivot is the earliest coface, and a pair found in dimension `d` clears the
/// column of its coface in dimension `d + 1`. The pairs coincide with those of
/// the standard boundary reduction. Cofaces are enumerated from the edge
/// lengths, since a Vietoris–Rips complex is determined by its edges; the
/// top-dimensional simplices are never materialized as columns. Zero-length
/// pairs are dropped; unpaired simplices give infinite bars.
pub fn persistent_homology(complex: &FilteredComplex) -> BarcodeSet {
    let simplices = complex.simplices();
    let q_max = complex.q_max;

    let mut nbrs: Vec<Vec<(u32, u32)>> = vec![Vec::new(); complex.n_vertices];
    for s in simplices.iter().filter(|s| s.dim == 1) {
        let v = s.vertices();
        nbrs[v[0] as usize].push((v[1], s.value));
        nbrs[v[1] as usize].push((v[0], s.value));
    }
    for list in &mut nbrs {
        list.sort_unstable();
    }

    let mut bars: Vec<Vec<Bar>> = vec![Vec::new(); q_max + 1];
    let mut killed: HashSet<Key> = HashSet::new();
    let mut col = Vec::new();
    let mut other = Vec::new();
    let mut scratch = Vec::new();
    for (d, dim_bars) in bars.iter_mut().enumerate() {
        // most columns need no additions; their reduced form is the plain
        // coboundary and is recomputed on demand instead of stored
        let mut pivot_owner: HashMap<Key, Owner> = HashMap::new();
        let mut stored: Vec<Vec<Key>> = Vec::new();
        let mut next_killed: HashSet<Key> = HashSet::new();
        for (p, s) in simplices.iter().enumerate().rev().filter(|(_, s)| s.dim as usize == d) {
            if !killed.is_empty() && killed.contains(&key_of(s)) {
                continue;
            }
            cofaces(&nbrs, s, &mut col);
            let mut pivot = col.iter().min().copied();
            let mut added = false;
            while let Some(pv) = pivot {
                let Some(&owner) = pivot_owner.get(&pv) else { break };
                if !added {
                    col.sort_unstable();
                    added = true;
                }
                let reduced = match owner {
                    Owner::Plain(q) => {
                        cofaces(&nbrs, &simplices[q as usize], &mut other);
                        other.sort_unstable();
                        &other
                    }
                    Owner::Stored(i) => &stored[i as usize],
                };
                add_columns(&col, reduced, &mut scratch);
                std::mem::swap(&mut col, &mut scratch);
                pivot = col.first().copied();
            }
            match pivot {
                Some(pv) => {
                    if pv.0 > s.value {
                        dim_bars.push(Bar { birth: s.value, death: Some(pv.0) });
                    }
                    let owner = if added {
                        stored.push(std::mem::take(&mut col));
                        Owner::Stored(stored.len() as u32 - 1)
                    } else {
                        Owner::Plain(p as u32)
                    };
                    pivot_owner.insert(pv, owner);
                    next_killed.insert(pv);
                }
                None => dim_bars.push(Bar { birth: s.value, death: None }),
            }
        }
        killed = next_killed;
    }
    for b in &mut bars {
        b.sort_unstable();
    }
    BarcodeSet {
        q_max,
        eps_max: complex.eps_max,
        bars,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ph::{geodesic_metric, vr_filtration, NeighborGraph};

    fn ph_of(n: usize, edges: &[(usize, usize)], eps: u32) -> BarcodeSet {
        let g = NeighborGraph::from_edges(n, edges).unwrap();
        let c = vr_filtration(&geodesic_metric(&g), 2, eps, 1 << 20).unwrap();
        persistent_homology(&c)
    }

    #[test]
    fn two_points_merge_once() {
        // hop distance 1 means both vertices and the edge enter at 0 / 1
        let m = crate::ph::GeodesicMetric::from_matrix(&[vec![Some(0), Some(1)], vec![Some(1), Some(0)]]);
        let c = vr_filtration(&m, 1, 1, 100).unwrap();
        let b = persistent_homology(&c);
        assert_eq!(
            b.dim(0),
            &[Bar { birth: 0, death: None }, Bar { birth: 0, death: Some(1) }]
        );
        assert_eq!(b.betti_at(0).get(0), 2);
        assert_eq!(b.betti_at(1).get(0), 1);
    }

    #[test]
    fn four_cycle_loop_dies_at_two() {
        let b = ph_of(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 2);
        assert_eq!(b.dim(1), &[Bar { birth: 1, death: Some(2) }]);
        assert!(b.dim(2).is_empty());
    }

    #[test]
    fn hexagon_loop_dies_at_two() {
        let edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let b = ph_of(6, &edges, 3);
        assert_eq!(b.dim(1), &[Bar { birth: 1, death: Some(2) }]);
    }

    #[test]
    fn long_cycle_survives_small_scales() {
        let edges: Vec<_> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
        let b = ph_of(12, &edges, 3);
        assert_eq!(b.betti_at(3).as_slice(), &[1, 1, 0]);
    }

    #[test]
    fn infinite_h0_bars_count_components() {
        let b = ph_of(7, &[(0, 1), (1, 2), (3, 4), (5, 6)], 2);
        assert_eq!(b.dim(0).iter().filter(|x| x.is_infinite()).count(), 3);
        assert_eq!(b.dim(0).len(), 7);
    }

    #[test]
    fn csv_uses_inf_literal() {
        let b = ph_of(2, &[(0, 1)], 1);
        let mut out = Vec::new();
        b.write_csv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "dimension,birth,death\n0,0,inf\n0,0,1\n");
    }
}
