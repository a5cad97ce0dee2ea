use std::path::Path;

use serde::{Deserialize, Serialize};

use super::model::LayerFile;
use super::{ArchSpec, Layer, NetworkModel};
use crate::numfmt::round_sig;
use crate::{Error, Result};

pub const CHECKPOINT_VERSION: u32 = 1;

/// A trained network as stored on disk. Weights are kept to nine significant
/// digits.
#[derive(Serialize, Deserialize)]
struct CheckpointFile {
    format_version: u32,
    arch: ArchSpec,
    seed: u64,
    epochs: usize,
    layers: Vec<LayerFile>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub model: NetworkModel,
    pub seed: u64,
    /// Training epochs the model went through.
    pub epochs: usize,
}

impl Checkpoint {
    pub fn to_json(&self) -> Result<String> {
        let mut layers: Vec<LayerFile> = self.model.layers.iter().map(LayerFile::from).collect();
        for l in &mut layers {
            l.weights.iter_mut().flatten().for_each(|w| *w = round_sig(*w));
            l.bias.iter_mut().for_each(|b| *b = round_sig(*b));
        }
        let file = CheckpointFile {
            format_version: CHECKPOINT_VERSION,
            arch: self.model.arch.clone(),
            seed: self.seed,
            epochs: self.epochs,
            layers,
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CheckpointFile = serde_json::from_str(text)?;
        if file.format_version != CHECKPOINT_VERSION {
            return Err(Error::InvalidInput(format!(
                "checkpoint format {} is not supported (expected {CHECKPOINT_VERSION})",
                file.format_version
            )));
        }
        let layers = file.layers.into_iter().map(Layer::try_from).collect::<Result<Vec<_>>>()?;
        let model = NetworkModel { arch: file.arch, layers };
        model.validate()?;
        Ok(Checkpoint {
            model,
            seed: file.seed,
            epochs: file.epochs,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Checkpoint::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::{init_network, Activation};

    #[test]
    fn json_round_trip_is_stable() {
        let model = init_network(&ArchSpec::new(vec![2, 5, 3], Activation::LeakyRelu), 4).unwrap();
        let ck = Checkpoint { model, seed: 4, epochs: 17 };
        let text = ck.to_json().unwrap();
        let back = Checkpoint::from_json(&text).unwrap();
        assert_eq!(back.to_json().unwrap(), text);
        assert_eq!(back.epochs, 17);
        for (a, b) in back.model.parameters().zip(ck.model.parameters()) {
            assert!((a - b).abs() <= 5e-9 * b.abs());
        }
    }

    #[test]
    fn wrong_shape_is_rejected() {
        let model = init_network(&ArchSpec::new(vec![2, 3], Activation::Tanh), 1).unwrap();
        let text = Checkpoint { model, seed: 1, epochs: 0 }.to_json().unwrap();
        let broken = text.replacen("\"widths\": [\n      2,", "\"widths\": [\n      4,", 1);
        assert_ne!(broken, text);
        assert!(Checkpoint::from_json(&broken).is_err());
    }
}
