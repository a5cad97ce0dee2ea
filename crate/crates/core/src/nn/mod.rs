//! Fully connected binary classifiers and their layer-by-layer images.
//!
//! A network with hidden widths `n_2..n_{l+1}` computes
//! `v = s ∘ g ∘ f_l ∘ … ∘ f_1` where each `f_j(x) = σ(W_j x + b_j)`, `g` is
//! a final affine map to two logits and `s` is the softmax. The hidden
//! images `v_j(X) = f_j ∘ … ∘ f_1(X)` are what the topological analysis
//! consumes.
//!
//! On width: a data manifold in `R^n` always embeds in `R^{2n+2}`, where a
//! hyperplane can separate the classes, so hidden widths of at least `2n + 2`
//! leave room for a smooth network to untangle any two classes.

mod adam;
mod arch;
mod checkpoint;
mod grad;
mod model;
mod train;

pub use adam::{adam_step, lr_at, AdamParams, AdamState, TrainConfig};
pub use arch::{Activation, ArchPreset, ArchSpec};
pub use checkpoint::{Checkpoint, CHECKPOINT_VERSION};
pub use grad::{loss_and_grad, Gradients};
pub use model::{accuracy, class_a_probability, forward, layer_representations, init_network, ForwardPass, Layer, NetworkModel};
pub use train::{generalization_gap, train, EpochRecord, TrainHistory};
