use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Tanh,
    Relu,
    LeakyRelu,
}

impl Activation {
    pub const ALL: [Activation; 3] = [Activation::Tanh, Activation::LeakyRelu, Activation::Relu];

    pub fn name(self) -> &'static str {
        match self {
            Activation::Tanh => "tanh",
            Activation::Relu => "relu",
            Activation::LeakyRelu => "leaky_relu",
        }
    }

    #[inline]
    pub fn apply(self, z: f64, slope: f64) -> f64 {
        match self {
            Activation::Tanh => z.tanh(),
            Activation::Relu => z.max(0.0),
            Activation::LeakyRelu => {
                if z > 0.0 {
                    z
                } else {
                    slope * z
                }
            }
        }
    }

    /// Derivative from the pre-activation `z` and the output `a`; ReLU's
    /// subgradient at zero is 0.
    #[inline]
    pub fn derivative(self, z: f64, a: f64, slope: f64) -> f64 {
        match self {
            Activation::Tanh => 1.0 - a * a,
            Activation::Relu => {
                if z > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::LeakyRelu => {
                if z > 0.0 {
                    1.0
                } else {
                    slope
                }
            }
        }
    }
}

impl std::str::FromStr for Activation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tanh" => Ok(Activation::Tanh),
            "relu" => Ok(Activation::Relu),
            "leaky_relu" | "leaky-relu" | "leaky" => Ok(Activation::LeakyRelu),
            _ => Err(Error::InvalidInput(format!("unknown activation {s:?}"))),
        }
    }
}

impl std::fmt::Display for Activation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Layer widths `[d, n_2, …, n_{l+1}]`: the input dimension followed by one
/// entry per hidden layer. The two-logit output layer is implicit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArchSpec {
    pub widths: Vec<usize>,
    pub activation: Activation,
    #[serde(default = "default_slope")]
    pub leaky_slope: f64,
}

fn default_slope() -> f64 {
    0.01
}

impl ArchSpec {
    pub fn new(widths: Vec<usize>, activation: Activation) -> Self {
        ArchSpec {
            widths,
            activation,
            leaky_slope: default_slope(),
        }
    }

    /// `depth` hidden layers of equal `width`.
    pub fn uniform(input_dim: usize, depth: usize, width: usize, activation: Activation) -> Self {
        let mut widths = vec![input_dim];
        widths.extend(std::iter::repeat_n(width, depth));
        ArchSpec::new(widths, activation)
    }

    pub fn input_dim(&self) -> usize {
        self.widths[0]
    }

    /// Number of hidden layers `l`.
    pub fn depth(&self) -> usize {
        self.widths.len() - 1
    }

    pub fn hidden_widths(&self) -> &[usize] {
        &self.widths[1..]
    }

    pub fn validate(&self) -> Result<()> {
        if self.widths.len() < 2 {
            return Err(Error::InvalidInput("need an input width and at least one hidden layer".into()));
        }
        if let Some(i) = self.widths.iter().position(|&w| w == 0) {
            return Err(Error::InvalidInput(format!("width of layer {i} is zero")));
        }
        if !self.leaky_slope.is_finite() {
            return Err(Error::InvalidInput("leaky slope must be finite".into()));
        }
        Ok(())
    }
}

/// Named width patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArchPreset {
    /// 6 neurons in every hidden layer.
    Narrow,
    /// 15 neurons everywhere except 3 in the middle hidden layer.
    Bottleneck,
    /// 50 neurons in every hidden layer.
    Wide,
}

impl ArchPreset {
    pub const ALL: [ArchPreset; 3] = [ArchPreset::Narrow, ArchPreset::Bottleneck, ArchPreset::Wide];

    pub fn name(self) -> &'static str {
        match self {
            ArchPreset::Narrow => "narrow",
            ArchPreset::Bottleneck => "bottleneck",
            ArchPreset::Wide => "wide",
        }
    }

    pub fn hidden_widths(self, depth: usize) -> Vec<usize> {
        match self {
            ArchPreset::Narrow => vec![6; depth],
            ArchPreset::Wide => vec![50; depth],
            ArchPreset::Bottleneck => {
                let mut w = vec![15; depth];
                if depth > 0 {
                    w[(depth - 1) / 2] = 3;
                }
                w
            }
        }
    }

    pub fn spec(self, input_dim: usize, depth: usize, activation: Activation) -> ArchSpec {
        let mut widths = vec![input_dim];
        widths.extend(self.hidden_widths(depth));
        ArchSpec::new(widths, activation)
    }
}

impl std::str::FromStr for ArchPreset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "narrow" => Ok(ArchPreset::Narrow),
            "bottleneck" => Ok(ArchPreset::Bottleneck),
            "wide" => Ok(ArchPreset::Wide),
            _ => Err(Error::InvalidInput(format!("unknown architecture preset {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn activation_definitions() {
        assert_eq!(Activation::Relu.apply(-3.0, 0.01), 0.0);
        assert!((Activation::LeakyRelu.apply(-3.0, 0.01) + 0.03).abs() < 1e-15);
        assert_eq!(Activation::Relu.derivative(0.0, 0.0, 0.01), 0.0);
        assert_eq!(Activation::Tanh.apply(0.0, 0.0), 0.0);
    }

    #[test]
    fn bottleneck_narrows_the_middle() {
        assert_eq!(ArchPreset::Bottleneck.hidden_widths(5), vec![15, 15, 3, 15, 15]);
        assert_eq!(ArchPreset::Bottleneck.hidden_widths(4), vec![15, 3, 15, 15]);
    }

    #[test]
    fn zero_width_is_rejected() {
        assert!(ArchSpec::new(vec![2, 0, 2], Activation::Tanh).validate().is_err());
        assert!(ArchSpec::new(vec![2], Activation::Tanh).validate().is_err());
    }
}
