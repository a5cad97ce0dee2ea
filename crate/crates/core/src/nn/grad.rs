use ndarray::{Array2, Axis};

use super::model::{forward_matrix, to_matrix, ForwardPass, Layer};
use super::NetworkModel;
use crate::geometry::{Class, PointSet};
use crate::{Error, Result};

/// Parameter gradients, shaped like [`NetworkModel::layers`].
#[derive(Clone, Debug, PartialEq)]
pub struct Gradients {
    pub layers: Vec<Layer>,
}

impl Gradients {
    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(l.bias.iter()).copied())
    }
}

/// Mean softmax cross-entropy of the batch and its gradient with respect to
/// every weight and bias, by reverse-mode differentiation.
pub fn loss_and_grad(model: &NetworkModel, points: &PointSet, labels: &[Class]) -> Result<(f64, Gradients)> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty batch".into()));
    }
    if points.len() != labels.len() {
        return Err(Error::InvalidInput("one label per point required".into()));
    }
    if points.dim() != model.arch.input_dim() {
        return Err(Error::InvalidInput(format!(
            "points have dimension {} but the network expects {}",
            points.dim(),
            model.arch.input_dim()
        )));
    }
    let (loss, grads, _) = backprop(model, &to_matrix(points), labels);
    Ok((loss, grads))
}

pub(crate) fn backprop(model: &NetworkModel, x: &Array2<f64>, labels: &[Class]) -> (f64, Gradients, ForwardPass) {
    let fp = forward_matrix(model, x);
    let n = labels.len() as f64;

    let mut loss = 0.0;
    for (row, &c) in fp.logits.axis_iter(Axis(0)).zip(labels) {
        let m = row[0].max(row[1]);
        let lse = m + ((row[0] - m).exp() + (row[1] - m).exp()).ln();
        loss += lse - row[c.index()];
    }
    loss /= n;

    // d loss / d logits = (p − onehot) / n
    let mut delta = fp.probs.clone();
    for (mut row, &c) in delta.axis_iter_mut(Axis(0)).zip(labels) {
        row[c.index()] -= 1.0;
    }
    delta /= n;

    let act = model.arch.activation;
    let slope = model.arch.leaky_slope;
    let depth = model.depth();
    let mut grads: Vec<Layer> = Vec::with_capacity(depth + 1);
    for j in (0..=depth).rev() {
        let input = if j == 0 { x } else { &fp.hidden[j - 1] };
        grads.push(Layer {
            weights: delta.t().dot(input),
            bias: delta.sum_axis(Axis(0)),
        });
        if j > 0 {
            let mut upstream = delta.dot(&model.layers[j].weights);
            ndarray::Zip::from(&mut upstream)
                .and(&fp.pre[j - 1])
                .and(&fp.hidden[j - 1])
                .for_each(|g, &z, &a| *g *= act.derivative(z, a, slope));
            delta = upstream;
        }
    }
    grads.reverse();
    (loss, Gradients { layers: grads }, fp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::{init_network, Activation, ArchSpec};

    #[test]
    fn uniform_probabilities_cost_ln_two() {
        let arch = ArchSpec::new(vec![2, 3], Activation::Tanh);
        let mut m = init_network(&arch, 1).unwrap();
        m.layers.iter_mut().for_each(|l| l.weights.fill(0.0));
        let pts = PointSet::new(2, vec![1.0, 2.0, -1.0, 0.5]).unwrap();
        let (loss, _) = loss_and_grad(&m, &pts, &[Class::A, Class::B]).unwrap();
        assert!((loss - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn duplicated_batch_has_the_same_mean() {
        let arch = ArchSpec::new(vec![2, 5, 4], Activation::Relu);
        let m = init_network(&arch, 3).unwrap();
        let pts = PointSet::new(2, vec![0.3, -1.0, 2.0, 0.7, -0.4, 1.1]).unwrap();
        let labels = [Class::A, Class::B, Class::B];
        let mut twice = pts.clone();
        for p in pts.iter() {
            twice.push(p);
        }
        let labels2: Vec<Class> = labels.iter().chain(&labels).copied().collect();
        let (l1, g1) = loss_and_grad(&m, &pts, &labels).unwrap();
        let (l2, g2) = loss_and_grad(&m, &twice, &labels2).unwrap();
        assert!((l1 - l2).abs() < 1e-12);
        for (a, b) in g1.iter().zip(g2.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_batch_is_an_error() {
        let m = init_network(&ArchSpec::new(vec![2, 3], Activation::Relu), 1).unwrap();
        let pts = PointSet::new(2, vec![]).unwrap();
        assert!(loss_and_grad(&m, &pts, &[]).is_err());
    }
}
