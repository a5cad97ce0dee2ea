//! Brute-force Betti numbers of a single clique complex, by matrix rank.
//!
//! Independent of the persistence path: cliques come from bitmask
//! intersection, and ranks from dense Gaussian elimination on bit rows.

use std::collections::HashMap;

use super::{BettiVector, GeodesicMetric};
use crate::{Error, Result};

pub const DEFAULT_ORACLE_CAP: usize = 64;

fn cliques(adj: &[u64], n: usize, max_size: usize) -> Vec<Vec<Vec<u32>>> {
    let mut by_size: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_size + 1];
    fn grow(
        adj: &[u64],
        current: &mut Vec<u32>,
        allowed: u64,
        max_size: usize,
        by_size: &mut Vec<Vec<Vec<u32>>>,
    ) {
        by_size[current.len()].push(current.clone());
        if current.len() == max_size {
            return;
        }
        let mut rest = allowed;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            current.push(v);
            // only higher-numbered vertices keep the list ascending
            let higher = if v >= 63 { 0 } else { !0u64 << (v + 1) };
            grow(adj, current, allowed & adj[v as usize] & higher, max_size, by_size);
            current.pop();
        }
    }
    let all = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut current = Vec::new();
    let mut rest = all;
    while rest != 0 {
        let v = rest.trailing_zeros();
        rest &= rest - 1;
        current.push(v);
        let higher = if v >= 63 { 0 } else { !0u64 << (v + 1) };
        grow(adj, &mut current, adj[v as usize] & higher, max_size, &mut by_size);
        current.pop();
    }
    by_size
}

/// Rank over GF(2) of the rows given as bitsets.
fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let words = rows.first().map_or(0, Vec::len);
    for bit in 0..words * 64 {
        let (w, mask) = (bit / 64, 1u64 << (bit % 64));
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & mask != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers `β_0..=β_q_max` of the clique complex of pairs at distance
/// `≤ eps`, as `dim C_j − rank ∂_j − rank ∂_{j+1}`.
pub fn betti_bruteforce(metric: &GeodesicMetric, eps: u32, q_max: usize) -> Result<BettiVector> {
    betti_bruteforce_capped(metric, eps, q_max, DEFAULT_ORACLE_CAP)
}

pub(crate) fn betti_bruteforce_capped(metric: &GeodesicMetric, eps: u32, q_max: usize, cap: usize) -> Result<BettiVector> {
    use super::HopMetric;
    let n = metric.len();
    if n > cap.min(64) {
        return Err(Error::InvalidInput(format!("oracle limited to {} points, got {n}", cap.min(64))));
    }
    let mut adj = vec![0u64; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && metric.get(i, j).is_some_and(|d| d <= eps) {
                adj[i] |= 1 << j;
            }
        }
    }
    let by_size = cliques(&adj, n, q_max + 2);
    // chains[j] = j-simplices (size j+1)
    let chains: Vec<&Vec<Vec<u32>>> = (0..=q_max + 1).map(|j| &by_size[j + 1]).collect();
    let rank_boundary = |j: usize| -> usize {
        // ∂_j : C_j → C_{j-1}
        if j == 0 || chains[j].is_empty() {
            return 0;
        }
        let faces: HashMap<&[u32], usize> = chains[j - 1].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let words = chains[j - 1].len().div_ceil(64);
        let rows = chains[j]
            .iter()
            .map(|s| {
                let mut row = vec![0u64; words];
                for skip in 0..s.len() {
                    let f: Vec<u32> = s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                    let i = faces[f.as_slice()];
                    row[i / 64] ^= 1 << (i % 64);
                }
                row
            })
            .collect();
        gf2_rank(rows)
    };
    let ranks: Vec<usize> = (0..=q_max + 1).map(rank_boundary).collect();
    Ok(BettiVector::new(
        (0..=q_max).map(|j| chains[j].len() - ranks[j] - ranks[j + 1]).collect(),
    ))
}
