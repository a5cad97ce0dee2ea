use rand::seq::SliceRandom;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Class, LabeledCloud};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    pub train: LabeledCloud,
    pub test: LabeledCloud,
    pub ratio: f64,
    /// Cloud indices that went to each side, ascending.
    pub train_idx: Vec<usize>,
    pub test_idx: Vec<usize>,
}

/// Stratified train/test split: each class contributes `round(ratio · n_class)`
/// points to the training side. Both sides keep the original cloud order.
pub fn split(cloud: &LabeledCloud, ratio: f64, seed: u64) -> Result<Split> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::InvalidInput(format!("split ratio {ratio} outside (0, 1)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for class in Class::BOTH {
        let mut idx = cloud.indices_of(class);
        let n = idx.len();
        let n_train = (ratio * n as f64).round() as usize;
        if n_train == 0 || n_train >= n {
            return Err(Error::InvalidInput(format!(
                "ratio {ratio} leaves one side empty for class {class} ({n} points)"
            )));
        }
        idx.shuffle(&mut rng);
        train_idx.extend_from_slice(&idx[..n_train]);
        test_idx.extend_from_slice(&idx[n_train..]);
    }
    train_idx.sort_unstable();
    test_idx.sort_unstable();
    Ok(Split {
        train: cloud.select(&train_idx),
        test: cloud.select(&test_idx),
        ratio,
        train_idx,
        test_idx,
    })
}
