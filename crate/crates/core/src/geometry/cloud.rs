use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One of the two classes of a binary problem. Class `A` is logit 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    A,
    B,
}

impl Class {
    pub const BOTH: [Class; 2] = [Class::A, Class::B];

    pub fn index(self) -> usize {
        match self {
            Class::A => 0,
            Class::B => 1,
        }
    }

    pub fn from_index(i: usize) -> Class {
        if i == 0 {
            Class::A
        } else {
            Class::B
        }
    }

    pub fn other(self) -> Class {
        match self {
            Class::A => Class::B,
            Class::B => Class::A,
        }
    }
}

impl std::fmt::Display for Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Class::A => "a",
            Class::B => "b",
        })
    }
}

impl std::str::FromStr for Class {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Class::A),
            "b" | "B" => Ok(Class::B),
            _ => Err(Error::InvalidInput(format!("unknown class {s:?}"))),
        }
    }
}

/// Unlabelled points in `R^dim`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("point dimension must be at least 1".into()));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidInput(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        Ok(PointSet { dim, coords })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidInput("rows of unequal dimension".into()));
        }
        PointSet::new(dim, rows.concat())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn push(&mut self, p: &[f64]) {
        assert_eq!(p.len(), self.dim, "point dimension mismatch");
        self.coords.extend_from_slice(p);
    }

    /// Points at the given indices, in that order.
    pub fn select(&self, idx: &[usize]) -> PointSet {
        let mut coords = Vec::with_capacity(idx.len() * self.dim);
        for &i in idx {
            coords.extend_from_slice(self.point(i));
        }
        PointSet { dim: self.dim, coords }
    }
}

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// A finite sample of `M = M_a ∪ M_b` with one class label per point.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledCloud {
    points: PointSet,
    labels: Vec<Class>,
}

impl LabeledCloud {
    /// Fails unless there is one label per point and both classes occur.
    pub fn new(points: PointSet, labels: Vec<Class>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::InvalidInput(format!(
                "{} points but {} labels",
                points.len(),
                labels.len()
            )));
        }
        for c in Class::BOTH {
            if !labels.contains(&c) {
                return Err(Error::InvalidInput(format!("class {c} is empty")));
            }
        }
        Ok(LabeledCloud { points, labels })
    }

    pub(crate) fn from_parts_unchecked(points: PointSet, labels: Vec<Class>) -> Self {
        debug_assert_eq!(points.len(), labels.len());
        LabeledCloud { points, labels }
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn labels(&self) -> &[Class] {
        &self.labels
    }

    pub fn count(&self, class: Class) -> usize {
        self.labels.iter().filter(|&&c| c == class).count()
    }

    pub fn indices_of(&self, class: Class) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.labels[i] == class).collect()
    }

    /// The points of one class, in cloud order.
    pub fn class_points(&self, class: Class) -> PointSet {
        self.points.select(&self.indices_of(class))
    }

    pub fn select(&self, idx: &[usize]) -> LabeledCloud {
        LabeledCloud {
            points: self.points.select(idx),
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    /// Centred at the origin and scaled by one factor so the mean squared
    /// coordinate is 1. A similarity transform: neighbour order and the hop
    /// metric are unchanged.
    pub fn standardized(&self) -> LabeledCloud {
        let d = self.dim();
        let n = self.len() as f64;
        let mut mean = vec![0.0; d];
        for p in self.points.iter() {
            mean.iter_mut().zip(p).for_each(|(m, x)| *m += x / n);
        }
        let ms: f64 = self.points.iter().map(|p| sq_dist(p, &mean)).sum::<f64>() / (n * d as f64);
        let scale = if ms > 0.0 { ms.sqrt().recip() } else { 1.0 };
        let coords = self
            .points
            .coords()
            .chunks(d)
            .flat_map(|p| p.iter().zip(&mean).map(|(x, m)| (x - m) * scale))
            .collect();
        LabeledCloud {
            points: PointSet::new(d, coords).expect("same shape"),
            labels: self.labels.clone(),
        }
    }

    /// Smallest Euclidean distance between a class-a and a class-b point.
    pub fn min_interclass_distance(&self) -> f64 {
        let a = self.class_points(Class::A);
        let b = self.class_points(Class::B);
        min_cross_distance(&a, &b)
    }
}

pub(crate) fn min_cross_distance(a: &PointSet, b: &PointSet) -> f64 {
    let mut best = f64::INFINITY;
    for p in a.iter() {
        for q in b.iter() {
            best = best.min(sq_dist(p, q));
        }
    }
    best.sqrt()
}
