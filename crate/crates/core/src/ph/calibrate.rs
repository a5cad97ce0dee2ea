use serde::{Deserialize, Serialize};

use super::filtration::vr_filtration_lean;
use super::{persistent_homology, BarcodeSet, BettiVector, KnnTable, LocalGeodesic, NeighborGraph};
use crate::geometry::{Class, DatasetKind, PointSet};
use crate::{Error, Result};

/// Knobs of the topological analysis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhSettings {
    /// Highest homology dimension computed.
    pub q_max: usize,
    pub k_min: usize,
    pub k_max: usize,
    /// Largest integer scale scanned by [`calibrate_eps`].
    pub eps_max: u32,
    pub simplex_budget: usize,
}

impl Default for PhSettings {
    fn default() -> Self {
        PhSettings {
            q_max: 2,
            k_min: 3,
            k_max: 30,
            eps_max: 4,
            simplex_budget: 5_000_000,
        }
    }
}

impl PhSettings {
    /// Defaults with `q_max` matched to the length of `target`.
    pub fn for_target(target: &BettiVector) -> Self {
        PhSettings {
            q_max: target.len().saturating_sub(1).clamp(1, 3),
            ..PhSettings::default()
        }
    }

    /// Settings for a synthetic class: `q_max` from its target, and a larger
    /// simplex budget for the nine-sphere dataset, whose voids only close at
    /// scale 2.
    pub fn for_dataset(kind: DatasetKind, class: Class) -> Option<Self> {
        let mut s = PhSettings::for_target(&kind.target(class)?);
        if kind == DatasetKind::III {
            s.simplex_budget = 30_000_000;
        }
        Some(s)
    }
}

/// Smallest `k` in `settings.k_min..=settings.k_max` whose kNN graph has
/// exactly `target_beta0` connected components (β₀ of the complex at ε = 1).
///
/// The range is clipped to `n − 1`. A single point needs no neighbours and
/// calibrates to `k = 0`.
pub fn calibrate_k(points: &PointSet, target_beta0: usize, settings: &PhSettings) -> Result<usize> {
    Ok(k_candidates(points, target_beta0, settings)?[0])
}

/// Every `k` in range satisfying the β₀ equation, ascending.
fn k_candidates(points: &PointSet, target_beta0: usize, settings: &PhSettings) -> Result<Vec<usize>> {
    if target_beta0 == 0 {
        return Err(Error::InvalidInput("target β₀ must be at least 1".into()));
    }
    let n = points.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty point set".into()));
    }
    if n == 1 {
        return if target_beta0 == 1 {
            Ok(vec![0])
        } else {
            Err(calib_err("k", target_beta0.to_string(), 0, "1".into()))
        };
    }
    let hi = settings.k_max.min(n - 1);
    let lo = settings.k_min.clamp(1, hi);
    let table = KnnTable::new(points, hi)?;

    // kNN graphs are nested in k, so components only merge as k grows
    let mut dsu = Dsu::new(n);
    let mut best: Option<(usize, usize)> = None;
    let mut hits = Vec::new();
    for k in 1..=hi {
        for i in 0..n {
            dsu.union(i, table.nth(i, k - 1));
        }
        if k < lo {
            continue;
        }
        let comps = dsu.count;
        if comps == target_beta0 {
            hits.push(k);
        } else if comps < target_beta0 {
            break;
        }
        if best.is_none_or(|(_, c)| comps.abs_diff(target_beta0) < c.abs_diff(target_beta0)) {
            best = Some((k, comps));
        }
    }
    if hits.is_empty() {
        let (k, comps) = best.expect("non-empty range");
        return Err(calib_err("k", target_beta0.to_string(), k as u32, comps.to_string()));
    }
    Ok(hits)
}

fn calib_err(param: &'static str, target: String, closest: u32, achieved: String) -> Error {
    Error::Calibration {
        param,
        target,
        closest,
        achieved,
    }
}

struct Dsu {
    parent: Vec<u32>,
    count: usize,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n as u32).collect(),
            count: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // lower root wins, keeps the structure order-independent
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
            self.count -= 1;
        }
    }
}

fn graph_for(points: &PointSet, k: usize) -> Result<NeighborGraph> {
    if points.len() == 1 {
        return NeighborGraph::from_edges(1, &[]);
    }
    Ok(KnnTable::new(points, k.clamp(1, points.len() - 1))?.graph(k.clamp(1, points.len() - 1)))
}

/// Barcodes of the kNN hop-metric filtration truncated at `eps`.
fn barcodes_at(graph: &NeighborGraph, q_max: usize, eps: u32, budget: usize) -> Result<BarcodeSet> {
    let metric = LocalGeodesic::new(graph, eps);
    let complex = vr_filtration_lean(&metric, q_max, eps, budget)?;
    Ok(persistent_homology(&complex))
}

#[derive(Clone, Debug)]
pub struct EpsCalibration {
    pub eps: u32,
    pub betti: BettiVector,
    pub barcodes: BarcodeSet,
}

/// Smallest integer scale `ε ∈ 1..=eps_max` at which the complex on the
/// `k_star` graph has exactly the `target` Betti numbers.
///
/// Scales are tried in increasing order against a filtration truncated at the
/// scale under test; the Betti numbers at `ε` only depend on simplices up to
/// `ε`, so this matches a single filtration built to `eps_max`.
pub fn calibrate_eps(points: &PointSet, k_star: usize, target: &BettiVector, settings: &PhSettings) -> Result<EpsCalibration> {
    if target.len() > settings.q_max + 1 {
        return Err(Error::InvalidInput(format!(
            "target {target} needs q_max ≥ {}, have {}",
            target.len() - 1,
            settings.q_max
        )));
    }
    let graph = graph_for(points, k_star)?;
    let mut best: Option<(u32, BettiVector)> = None;
    for eps in 1..=settings.eps_max.max(1) {
        let bars = barcodes_at(&graph, settings.q_max, eps, settings.simplex_budget)?;
        let betti = bars.betti_at(eps).truncated(target.len());
        if &betti == target {
            return Ok(EpsCalibration {
                eps,
                betti,
                barcodes: bars,
            });
        }
        if best.as_ref().is_none_or(|(_, b)| betti.l1_distance(target) < b.l1_distance(target)) {
            best = Some((eps, betti));
        }
    }
    let (eps, betti) = best.expect("at least one scale");
    Err(calib_err("eps", target.to_string(), eps, betti.to_string()))
}

/// Outcome of analysing one point set.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub k: usize,
    pub eps: u32,
    pub betti: BettiVector,
    pub barcodes: BarcodeSet,
}

/// Calibrates `(k*, ε*)` against `target` and reports the Betti vector there.
///
/// `k*` is the smallest neighbour count giving the target β₀ and `ε*` the
/// smallest matching scale. When no scale matches at that `k*` (a loop broken
/// by a sampling gap, say), the other neighbour counts that still give the
/// target β₀ are tried scale by scale: every candidate at `ε = 1`, then at
/// `ε = 2`, and so on, dropping a candidate once it exceeds the simplex
/// budget. The error from `k*` is reported if nothing matches.
pub fn analyze_points(points: &PointSet, target: &BettiVector, settings: &PhSettings) -> Result<Analysis> {
    let cands = k_candidates(points, target.get(0), settings)?;
    let first_err = match calibrate_eps(points, cands[0], target, settings) {
        Ok(cal) => {
            return Ok(Analysis {
                k: cands[0],
                eps: cal.eps,
                betti: cal.betti,
                barcodes: cal.barcodes,
            })
        }
        Err(e @ (Error::Calibration { .. } | Error::ResourceBudget { .. })) => e,
        Err(e) => return Err(e),
    };
    let rest = &cands[1..];
    if rest.is_empty() {
        return Err(first_err);
    }
    let table = KnnTable::new(points, *rest.last().expect("non-empty"))?;
    let mut alive = vec![true; rest.len()];
    for eps in 1..=settings.eps_max {
        for (i, &k) in rest.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            match barcodes_at(&table.graph(k), settings.q_max, eps, settings.simplex_budget) {
                Ok(bars) => {
                    let betti = bars.betti_at(eps).truncated(target.len());
                    if &betti == target {
                        return Ok(Analysis { k, eps, betti, barcodes: bars });
                    }
                }
                Err(Error::ResourceBudget { .. }) => alive[i] = false,
                Err(e) => return Err(e),
            }
        }
    }
    Err(first_err)
}

/// Betti numbers `β_0..=β_q_max` at a fixed `(k, ε)`; `k` is clipped to `n − 1`.
pub fn betti_fixed(points: &PointSet, k: usize, eps: u32, q_max: usize, budget: usize) -> Result<(BettiVector, BarcodeSet)> {
    let graph = graph_for(points, k)?;
    let bars = barcodes_at(&graph, q_max, eps.max(1), budget)?;
    Ok((bars.betti_at(eps), bars))
}
