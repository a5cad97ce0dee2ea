use std::io::Write;

use super::grad::backprop;
use super::model::{accuracy_of, forward_matrix, to_matrix};
use super::{accuracy, adam_step, lr_at, AdamState, NetworkModel, TrainConfig};
use crate::geometry::Split;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpochRecord {
    /// Loss before this epoch's update.
    pub loss: f64,
    /// Accuracies of the model the update was computed from.
    pub train_acc: f64,
    pub test_acc: f64,
    pub rate: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrainHistory {
    pub epochs: Vec<EpochRecord>,
}

impl TrainHistory {
    pub fn len(&self) -> usize {
        self.epochs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epochs.is_empty()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "epoch,loss,train_acc,test_acc,rate")?;
        for (t, r) in self.epochs.iter().enumerate() {
            writeln!(
                w,
                "{t},{},{},{},{}",
                crate::numfmt::fmt_sig(r.loss),
                crate::numfmt::fmt_sig(r.train_acc),
                crate::numfmt::fmt_sig(r.test_acc),
                crate::numfmt::fmt_sig(r.rate)
            )?;
        }
        Ok(())
    }
}

/// Full-batch Adam on the training side of `split`.
///
/// Runs until `config.epochs` updates have been made, or (with `early_stop`)
/// until the current model classifies the whole training set correctly with
/// a generalization gap within `gg_threshold`. One record per update.
pub fn train(mut model: NetworkModel, split: &Split, config: &TrainConfig) -> Result<(NetworkModel, TrainHistory)> {
    config.validate()?;
    let x_train = to_matrix(split.train.points());
    let x_test = to_matrix(split.test.points());
    if x_train.ncols() != model.arch.input_dim() {
        return Err(Error::InvalidInput("split dimension does not match the network".into()));
    }
    let mut state = AdamState::new(&model, config.adam);
    let mut history = TrainHistory::default();
    for t in 0..config.epochs {
        let (loss, grads, fp) = backprop(&model, &x_train, split.train.labels());
        if !loss.is_finite() {
            return Err(Error::Divergence {
                epoch: t,
                msg: format!("loss is {loss}"),
            });
        }
        let train_acc = accuracy_of(&fp.probs, split.train.labels());
        let test_acc = accuracy_of(&forward_matrix(&model, &x_test).probs, split.test.labels());
        if config.early_stop && train_acc == 1.0 && (train_acc - test_acc).abs() <= config.gg_threshold {
            break;
        }
        let rate = lr_at(config, t);
        adam_step(&mut state, &mut model, &grads, rate).map_err(|e| Error::Divergence {
            epoch: t,
            msg: e.to_string(),
        })?;
        history.epochs.push(EpochRecord {
            loss,
            train_acc,
            test_acc,
            rate,
        });
    }
    Ok((model, history))
}

/// `Acc(train) − Acc(test)`.
pub fn generalization_gap(model: &NetworkModel, split: &Split) -> Result<f64> {
    Ok(accuracy(model, &split.train)? - accuracy(model, &split.test)?)
}
