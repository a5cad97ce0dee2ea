use ndarray::{Array1, Array2, Axis};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::ArchSpec;
use crate::geometry::{Class, LabeledCloud, PointSet};
use crate::{Error, Result};

/// Affine map `x ↦ W x + b` with `W` of shape `(out, in)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    pub weights: Array2<f64>,
    pub bias: Array1<f64>,
}

impl Layer {
    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        Layer {
            weights: Array2::zeros((outputs, inputs)),
            bias: Array1::zeros(outputs),
        }
    }

    pub fn inputs(&self) -> usize {
        self.weights.ncols()
    }

    pub fn outputs(&self) -> usize {
        self.weights.nrows()
    }

    /// Batch pre-activations `X Wᵀ + b` for row-major inputs.
    pub(crate) fn affine(&self, x: &Array2<f64>) -> Array2<f64> {
        let mut z = x.dot(&self.weights.t());
        z += &self.bias;
        z
    }
}

/// Hidden layers followed by the two-logit output layer.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkModel {
    pub arch: ArchSpec,
    /// `arch.depth()` hidden layers, then the output layer.
    pub layers: Vec<Layer>,
}

impl NetworkModel {
    pub fn depth(&self) -> usize {
        self.arch.depth()
    }

    pub fn output(&self) -> &Layer {
        self.layers.last().expect("output layer")
    }

    pub fn parameters(&self) -> impl Iterator<Item = f64> + '_ {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(l.bias.iter()).copied())
    }

    /// Structural check used after loading a checkpoint.
    pub fn validate(&self) -> Result<()> {
        self.arch.validate()?;
        let w = &self.arch.widths;
        if self.layers.len() != w.len() {
            return Err(Error::InvalidInput("layer count does not match the architecture".into()));
        }
        for (j, layer) in self.layers.iter().enumerate() {
            let out = if j + 1 < w.len() { w[j + 1] } else { 2 };
            if layer.inputs() != w[j] || layer.outputs() != out || layer.bias.len() != out {
                return Err(Error::InvalidInput(format!("layer {j} has the wrong shape")));
            }
        }
        if self.parameters().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite parameter".into()));
        }
        Ok(())
    }
}

/// Weights uniform in `±sqrt(6 / (fan_in + fan_out))`, biases zero.
pub fn init_network(arch: &ArchSpec, seed: u64) -> Result<NetworkModel> {
    arch.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dims = arch.widths.clone();
    dims.push(2);
    let layers = dims
        .windows(2)
        .map(|io| {
            let (fan_in, fan_out) = (io[0], io[1]);
            let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
            let mut layer = Layer::zeros(fan_in, fan_out);
            layer
                .weights
                .iter_mut()
                .for_each(|w| *w = rng.random_range(-limit..limit));
            layer
        })
        .collect();
    Ok(NetworkModel {
        arch: arch.clone(),
        layers,
    })
}

/// Every layer's output for one batch.
#[derive(Clone, Debug)]
pub struct ForwardPass {
    /// Pre-activations of the hidden layers.
    pub(crate) pre: Vec<Array2<f64>>,
    /// `v_1(X), …, v_l(X)`.
    pub hidden: Vec<Array2<f64>>,
    pub logits: Array2<f64>,
    pub probs: Array2<f64>,
}

pub(crate) fn to_matrix(points: &PointSet) -> Array2<f64> {
    Array2::from_shape_vec((points.len(), points.dim()), points.coords().to_vec()).expect("row-major shape")
}

fn softmax_rows(logits: &Array2<f64>) -> Array2<f64> {
    let mut p = logits.clone();
    for mut row in p.axis_iter_mut(Axis(0)) {
        let m = row.fold(f64::NEG_INFINITY, |a, &b| a.max(b));
        row.mapv_inplace(|z| (z - m).exp());
        let s = row.sum();
        row.mapv_inplace(|e| e / s);
    }
    p
}

pub(crate) fn forward_matrix(model: &NetworkModel, x: &Array2<f64>) -> ForwardPass {
    let act = model.arch.activation;
    let slope = model.arch.leaky_slope;
    let depth = model.depth();
    let mut pre = Vec::with_capacity(depth);
    let mut hidden: Vec<Array2<f64>> = Vec::with_capacity(depth);
    for j in 0..depth {
        let input = if j == 0 { x } else { &hidden[j - 1] };
        let z = model.layers[j].affine(input);
        let a = z.mapv(|v| act.apply(v, slope));
        pre.push(z);
        hidden.push(a);
    }
    let last = hidden.last().unwrap_or(x);
    let logits = model.output().affine(last);
    let probs = softmax_rows(&logits);
    ForwardPass {
        pre,
        hidden,
        logits,
        probs,
    }
}

fn check_dim(model: &NetworkModel, points: &PointSet) -> Result<()> {
    if points.dim() != model.arch.input_dim() {
        return Err(Error::InvalidInput(format!(
            "points have dimension {} but the network expects {}",
            points.dim(),
            model.arch.input_dim()
        )));
    }
    Ok(())
}

/// Hidden activations, logits and softmax probabilities (class a in column 0).
pub fn forward(model: &NetworkModel, points: &PointSet) -> Result<ForwardPass> {
    check_dim(model, points)?;
    Ok(forward_matrix(model, &to_matrix(points)))
}

/// `v(x)`: the softmax probability of class a.
pub fn class_a_probability(model: &NetworkModel, points: &PointSet) -> Result<Vec<f64>> {
    Ok(forward(model, points)?.probs.column(0).to_vec())
}

/// Predicted classes; ties go to class a.
pub(crate) fn predictions(probs: &Array2<f64>) -> impl Iterator<Item = Class> + '_ {
    probs
        .axis_iter(Axis(0))
        .map(|r| if r[0] >= r[1] { Class::A } else { Class::B })
}

/// Fraction of points whose predicted class matches the label.
pub fn accuracy(model: &NetworkModel, cloud: &LabeledCloud) -> Result<f64> {
    if cloud.is_empty() {
        return Err(Error::InvalidInput("accuracy of an empty cloud".into()));
    }
    let fp = forward(model, cloud.points())?;
    Ok(accuracy_of(&fp.probs, cloud.labels()))
}

pub(crate) fn accuracy_of(probs: &Array2<f64>, labels: &[Class]) -> f64 {
    let hits = predictions(probs).zip(labels).filter(|(p, l)| p == *l).count();
    hits as f64 / labels.len() as f64
}

fn matrix_cloud(m: &Array2<f64>, labels: &[Class]) -> LabeledCloud {
    let coords = m.iter().copied().collect();
    LabeledCloud::from_parts_unchecked(PointSet::new(m.ncols(), coords).expect("width > 0"), labels.to_vec())
}

/// `v_1(X), …, v_l(X)` followed by the logits, each carrying the input labels.
pub fn layer_representations(model: &NetworkModel, cloud: &LabeledCloud) -> Result<Vec<LabeledCloud>> {
    let fp = forward(model, cloud.points())?;
    let mut out: Vec<LabeledCloud> = fp.hidden.iter().map(|h| matrix_cloud(h, cloud.labels())).collect();
    out.push(matrix_cloud(&fp.logits, cloud.labels()));
    Ok(out)
}

/// JSON checkpoint layout.
#[derive(Serialize, Deserialize)]
pub(crate) struct LayerFile {
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
}

impl From<&Layer> for LayerFile {
    fn from(l: &Layer) -> Self {
        LayerFile {
            weights: l.weights.axis_iter(Axis(0)).map(|r| r.to_vec()).collect(),
            bias: l.bias.to_vec(),
        }
    }
}

impl TryFrom<LayerFile> for Layer {
    type Error = Error;
    fn try_from(f: LayerFile) -> Result<Self> {
        let rows = f.weights.len();
        let cols = f.weights.first().map_or(0, Vec::len);
        if f.weights.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged weight matrix".into()));
        }
        Ok(Layer {
            weights: Array2::from_shape_vec((rows, cols), f.weights.concat())
                .map_err(|e| Error::InvalidInput(e.to_string()))?,
            bias: Array1::from(f.bias),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::Activation;

    fn random_points(n: usize, d: usize, seed: u64) -> PointSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        PointSet::new(d, (0..n * d).map(|_| rng.random_range(-3.0..3.0)).collect()).unwrap()
    }

    #[test]
    fn init_is_deterministic_and_bounded() {
        let arch = ArchSpec::new(vec![2, 6, 6, 2], Activation::Tanh);
        let a = init_network(&arch, 5).unwrap();
        assert_eq!(a, init_network(&arch, 5).unwrap());
        assert!(a.parameters().all(|w| w.abs() < 2.0));
        assert!(a.layers.iter().all(|l| l.bias.iter().all(|&b| b == 0.0)));
        assert_eq!(a.layers.len(), 4);
        assert_eq!(a.output().outputs(), 2);
    }

    #[test]
    fn zero_network_is_uniform() {
        let arch = ArchSpec::new(vec![3, 4, 4], Activation::Tanh);
        let mut m = init_network(&arch, 1).unwrap();
        for l in &mut m.layers {
            l.weights.fill(0.0);
        }
        let fp = forward(&m, &random_points(10, 3, 2)).unwrap();
        assert!(fp.hidden.iter().all(|h| h.iter().all(|&v| v == 0.0)));
        assert!(fp.probs.iter().all(|&p| p == 0.5));
    }

    #[test]
    fn softmax_rows_sum_to_one() {
        for act in Activation::ALL {
            let arch = ArchSpec::new(vec![4, 7, 5], act);
            let m = init_network(&arch, 9).unwrap();
            let fp = forward(&m, &random_points(100, 4, 3)).unwrap();
            for r in fp.probs.axis_iter(Axis(0)) {
                assert!((r.sum() - 1.0).abs() < 1e-12);
                assert!(r.iter().all(|&p| (0.0..=1.0).contains(&p)));
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let m = init_network(&ArchSpec::new(vec![2, 3], Activation::Relu), 1).unwrap();
        assert!(forward(&m, &random_points(4, 3, 1)).is_err());
    }

    #[test]
    fn uniform_predictions_tie_to_class_a() {
        let arch = ArchSpec::new(vec![2, 3], Activation::Relu);
        let mut m = init_network(&arch, 1).unwrap();
        m.layers.iter_mut().for_each(|l| l.weights.fill(0.0));
        let labels: Vec<Class> = (0..10).map(|i| if i < 3 { Class::A } else { Class::B }).collect();
        let cloud = LabeledCloud::new(random_points(10, 2, 4), labels).unwrap();
        assert!((accuracy(&m, &cloud).unwrap() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn identity_first_layer_passes_positive_inputs() {
        let arch = ArchSpec::new(vec![2, 2, 2], Activation::LeakyRelu);
        let mut m = init_network(&arch, 1).unwrap();
        m.layers[0].weights = Array2::eye(2);
        let pts = PointSet::new(2, vec![0.5, 1.5, 2.0, 0.25, 3.0, 1.0]).unwrap();
        let labels = vec![Class::A, Class::B, Class::A];
        let cloud = LabeledCloud::new(pts.clone(), labels.clone()).unwrap();
        let reps = layer_representations(&m, &cloud).unwrap();
        assert_eq!(reps.len(), 3);
        assert_eq!(reps[0].points(), &pts);
        assert!(reps.iter().all(|r| r.labels() == labels.as_slice()));
    }
}
