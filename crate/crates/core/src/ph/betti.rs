use serde::{Deserialize, Serialize};

/// Betti numbers `(β₀, β₁, …)` up to the dimension the analysis tracked.
///
/// Missing trailing entries read as zero through [`BettiVector::get`], but
/// equality compares the stored entries, so a target fixes how many
/// dimensions are compared.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(Vec<usize>);

impl BettiVector {
    pub fn new(v: Vec<usize>) -> Self {
        BettiVector(v)
    }

    pub fn get(&self, j: usize) -> usize {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// The first `len` entries, zero-padded.
    pub fn truncated(&self, len: usize) -> BettiVector {
        BettiVector((0..len).map(|j| self.get(j)).collect())
    }

    pub(crate) fn l1_distance(&self, other: &BettiVector) -> usize {
        let len = self.len().max(other.len());
        (0..len).map(|j| self.get(j).abs_diff(other.get(j))).sum()
    }
}

impl std::fmt::Display for BettiVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<usize>> for BettiVector {
    fn from(v: Vec<usize>) -> Self {
        BettiVector(v)
    }
}

/// Sum of every tracked Betti number, β₀ included.
pub fn topological_complexity(b: &BettiVector) -> usize {
    b.0.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexity_sums_all_entries() {
        assert_eq!(topological_complexity(&vec![1, 2, 0].into()), 3);
        assert_eq!(topological_complexity(&vec![1, 0, 0].into()), 1);
        assert_eq!(topological_complexity(&vec![18, 0, 9].into()), 27);
    }

    #[test]
    fn display_matches_tuple_notation() {
        assert_eq!(BettiVector::new(vec![1, 9]).to_string(), "(1, 9)");
        assert_eq!(BettiVector::new(vec![1, 2, 0]).truncated(2).to_string(), "(1, 2)");
    }
}
