use serde::{Deserialize, Serialize};

use super::model::Layer;
use super::{Gradients, NetworkModel};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdamParams {
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for AdamParams {
    fn default() -> Self {
        AdamParams {
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// Full-batch training schedule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    /// Rate at epoch 0.
    pub base_rate: f64,
    /// Multiplicative decay reached after one `decay_period`.
    pub decay_base: f64,
    pub decay_period: u32,
    pub epochs: usize,
    /// Largest |train − test accuracy| accepted as converged.
    pub gg_threshold: f64,
    /// Stop once training accuracy is perfect and the gap is within threshold.
    pub early_stop: bool,
    pub adam: AdamParams,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            base_rate: 0.03,
            decay_base: 0.5,
            decay_period: 2500,
            epochs: 2000,
            gg_threshold: 0.02,
            early_stop: true,
            adam: AdamParams::default(),
        }
    }
}

impl TrainConfig {
    /// The long 18000-epoch schedule.
    pub fn long() -> Self {
        TrainConfig {
            epochs: 18000,
            ..TrainConfig::default()
        }
    }

    /// Slower decay used with the bottleneck architecture.
    pub fn bottleneck() -> Self {
        TrainConfig {
            decay_period: 4000,
            decay_base: 0.5,
            ..TrainConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.base_rate > 0.0
            && self.decay_base > 0.0
            && self.decay_base <= 1.0
            && self.decay_period >= 1
            && self.gg_threshold >= 0.0
            && self.adam.beta1 >= 0.0
            && self.adam.beta1 < 1.0
            && self.adam.beta2 >= 0.0
            && self.adam.beta2 < 1.0
            && self.adam.eps > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("invalid training config {self:?}")))
        }
    }
}

/// `base_rate · decay_base^(t / decay_period)` with a real exponent.
pub fn lr_at(config: &TrainConfig, t: usize) -> f64 {
    config.base_rate * config.decay_base.powf(t as f64 / f64::from(config.decay_period))
}

/// Adam moment estimates for every parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct AdamState {
    pub params: AdamParams,
    pub step: u64,
    first: Vec<Layer>,
    second: Vec<Layer>,
}

impl AdamState {
    pub fn new(model: &NetworkModel, params: AdamParams) -> Self {
        let zeros: Vec<Layer> = model.layers.iter().map(|l| Layer::zeros(l.inputs(), l.outputs())).collect();
        AdamState {
            params,
            step: 0,
            first: zeros.clone(),
            second: zeros,
        }
    }
}

/// One bias-corrected Adam update of `model` in place.
pub fn adam_step(state: &mut AdamState, model: &mut NetworkModel, grads: &Gradients, rate: f64) -> Result<()> {
    if grads.layers.len() != model.layers.len() {
        return Err(Error::InvalidInput("gradient does not match the model".into()));
    }
    for (j, g) in grads.layers.iter().enumerate() {
        if g.weights.shape() != model.layers[j].weights.shape() || g.bias.len() != model.layers[j].bias.len() {
            return Err(Error::InvalidInput(format!("gradient shape mismatch in layer {j}")));
        }
        if g.weights.iter().chain(g.bias.iter()).any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteGradient { layer: j });
        }
    }
    state.step += 1;
    let AdamParams { beta1, beta2, eps } = state.params;
    let c1 = 1.0 - beta1.powi(state.step as i32);
    let c2 = 1.0 - beta2.powi(state.step as i32);
    let update = |theta: &mut f64, m: &mut f64, v: &mut f64, g: f64| {
        *m = beta1 * *m + (1.0 - beta1) * g;
        *v = beta2 * *v + (1.0 - beta2) * g * g;
        let m_hat = *m / c1;
        let v_hat = *v / c2;
        *theta -= rate * m_hat / (v_hat.sqrt() + eps);
    };
    for (j, layer) in model.layers.iter_mut().enumerate() {
        let g = &grads.layers[j];
        ndarray::Zip::from(&mut layer.weights)
            .and(&mut state.first[j].weights)
            .and(&mut state.second[j].weights)
            .and(&g.weights)
            .for_each(|t, m, v, &g| update(t, m, v, g));
        ndarray::Zip::from(&mut layer.bias)
            .and(&mut state.first[j].bias)
            .and(&mut state.second[j].bias)
            .and(&g.bias)
            .for_each(|t, m, v, &g| update(t, m, v, g));
    }
    Ok(())
}
