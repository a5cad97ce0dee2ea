use super::HopMetric;
use crate::{Error, Result};

/// Largest simplex dimension the builder supports (`q_max = 3` needs 4-simplices).
pub(crate) const MAX_SIMPLEX_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Simplex {
    /// Largest pairwise hop distance among the vertices.
    pub value: u32,
    pub dim: u8,
    verts: [u32; MAX_SIMPLEX_DIM + 1],
}

impl Simplex {
    fn new(value: u32, vertices: &[u32]) -> Self {
        let mut verts = [0; MAX_SIMPLEX_DIM + 1];
        verts[..vertices.len()].copy_from_slice(vertices);
        Simplex {
            value,
            dim: (vertices.len() - 1) as u8,
            verts,
        }
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> &[u32] {
        &self.verts[..=self.dim as usize]
    }

    /// Order key: (filtration value, dimension, lexicographic vertices).
    fn order_key(&self) -> (u32, u8, [u32; MAX_SIMPLEX_DIM + 1]) {
        (self.value, self.dim, self.verts)
    }
}

/// Vietoris–Rips simplices in filtration order.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub(crate) n_vertices: usize,
    pub(crate) q_max: usize,
    pub(crate) eps_max: u32,
    pub(crate) simplices: Vec<Simplex>,
    // top-dimensional simplices counted but not stored (lean builds only)
    pub(crate) unstored_top: usize,
}

impl FilteredComplex {
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    pub fn eps_max(&self) -> u32 {
        self.eps_max
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut c = vec![0; self.q_max + 2];
        for s in &self.simplices {
            c[s.dim as usize] += 1;
        }
        c[self.q_max + 1] += self.unstored_top;
        c
    }
}

/// Distance from `u` to a higher-indexed `w`, if within the ball table.
fn lookup(balls: &[Vec<(u32, u32)>], u: u32, w: u32) -> Option<u32> {
    let ball = &balls[u as usize];
    ball.binary_search_by_key(&w, |&(j, _)| j).ok().map(|p| ball[p].1)
}

/// The Vietoris–Rips filtration of `metric` up to scale `eps_max`.
///
/// Homology is wanted in dimensions `0..=q_max`, so simplices go up to
/// dimension `q_max + 1`. A simplex enters at the largest pairwise distance of
/// its vertices. Building more than `budget` simplices is an error.
pub fn vr_filtration<M: HopMetric>(metric: &M, q_max: usize, eps_max: u32, budget: usize) -> Result<FilteredComplex> {
    build(metric, q_max, eps_max, budget, true)
}

/// Like [`vr_filtration`], but the `q_max + 1` simplices only count against
/// the budget. The complex is a flag complex, so persistence recovers them
/// from the edges.
pub(crate) fn vr_filtration_lean<M: HopMetric>(
    metric: &M,
    q_max: usize,
    eps_max: u32,
    budget: usize,
) -> Result<FilteredComplex> {
    build(metric, q_max, eps_max, budget, false)
}

fn build<M: HopMetric>(metric: &M, q_max: usize, eps_max: u32, budget: usize, keep_top: bool) -> Result<FilteredComplex> {
    if !(1..=3).contains(&q_max) {
        return Err(Error::InvalidInput(format!("q_max must lie in 1..=3, got {q_max}")));
    }
    if eps_max < 1 {
        return Err(Error::InvalidInput("eps_max must be at least 1".into()));
    }
    let n = metric.len();
    if n >= 1 << 24 {
        return Err(Error::InvalidInput(format!("{n} vertices exceed the supported 2^24")));
    }
    let over = |dim: usize| Error::ResourceBudget { budget, dim, eps: eps_max };
    if n > budget {
        return Err(over(0));
    }
    let balls: Vec<Vec<(u32, u32)>> = (0..n).map(|i| metric.upper_ball(i, eps_max)).collect();
    let mut b = Builder {
        balls: &balls,
        top: q_max + 1,
        budget,
        keep_top,
        out: (0..n as u32).map(|v| Simplex::new(0, &[v])).collect(),
        skipped: 0,
    };

    // depth-first clique extension; candidates carry their max distance to the clique
    let mut clique = Vec::with_capacity(q_max + 2);
    let mut stack: Vec<Vec<(u32, u32)>> = Vec::with_capacity(q_max + 2);
    for v in 0..n as u32 {
        clique.clear();
        clique.push(v);
        stack.clear();
        stack.push(balls[v as usize].clone());
        b.extend(&mut clique, &mut stack, 0).map_err(over)?;
    }
    let Builder { mut out, skipped, .. } = b;
    out.sort_unstable_by_key(Simplex::order_key);
    Ok(FilteredComplex {
        n_vertices: n,
        q_max,
        eps_max,
        simplices: out,
        unstored_top: skipped,
    })
}

struct Builder<'a> {
    balls: &'a [Vec<(u32, u32)>],
    top: usize,
    budget: usize,
    keep_top: bool,
    out: Vec<Simplex>,
    skipped: usize,
}

impl Builder<'_> {
    fn extend(&mut self, clique: &mut Vec<u32>, stack: &mut Vec<Vec<(u32, u32)>>, value: u32) -> std::result::Result<(), usize> {
        let depth = stack.len() - 1;
        let cands = std::mem::take(&mut stack[depth]);
        if clique.len() == self.top && !self.keep_top {
            self.skipped += cands.len();
            if self.out.len() + self.skipped > self.budget {
                return Err(self.top);
            }
            stack[depth] = cands;
            return Ok(());
        }
        for (t, &(w, dw)) in cands.iter().enumerate() {
            let val = value.max(dw);
            clique.push(w);
            if self.out.len() + self.skipped >= self.budget {
                return Err(clique.len() - 1);
            }
            self.out.push(Simplex::new(val, clique));
            if clique.len() <= self.top {
                let next: Vec<(u32, u32)> = cands[t + 1..]
                    .iter()
                    .filter_map(|&(x, dx)| lookup(self.balls, w, x).map(|d| (x, dx.max(d))))
                    .collect();
                if !next.is_empty() {
                    stack.push(next);
                    self.extend(clique, stack, val)?;
                    stack.pop();
                }
            }
            clique.pop();
        }
        stack[depth] = cands;
        Ok(())
    }
}
