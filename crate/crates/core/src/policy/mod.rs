//! Reviewer agent: a residual MLP over one scalar score with a softmax head
//! over the three decisions, hand-written backpropagation, and Adam.

pub mod adam;
pub mod checkpoint;
pub mod network;
pub mod real;
pub mod sampling;

pub use adam::{adam_step, AdamConfig, AdamState};
pub use network::{Activation, ForwardCache, ForwardPass, Layer, NetworkConfig, Params, PolicyNetwork, INPUT_DIM, OUTPUT_DIM};
pub use real::Real;
pub use sampling::{log_softmax, sample_decision, softmax, validate_distribution, LOG_PROB_FLOOR};
