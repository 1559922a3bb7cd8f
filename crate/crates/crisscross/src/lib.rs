//! CrissCross: self-supervised audio-visual representation learning with
//! relaxed cross-modal temporal synchronicity.
//!
//! The crate is organised around the stages of the pretraining pipeline:
//!
//! - [`data`] — core value types, dataset manifests, media containers, run config
//! - [`sampling`] — the five temporal view-sampling strategies
//! - [`audio`] — waveform conditioning, log-mel spectrograms, audio augmentations
//! - [`video`] — frame-sequence augmentations
//! - [`synth`] — deterministic synthetic audio-visual dataset generator
//! - [`nn`] — the f64 neural-network layer library (forward + analytic backward)
//! - [`model`] — audio/visual encoders, projector and predictor heads
//! - [`objective`] — the six-term symmetrized stop-gradient loss family
//! - [`trainer`] — Adam, cosine schedule, the pretraining loop, checkpoints
//! - [`eval`] — frozen-feature extraction, linear SVM probe, retrieval
//! - [`ablate`] — grid runner for the loss/sampler/augmentation ablations

pub mod ablate;
pub mod audio;
pub mod data;
pub mod eval;
pub mod model;
pub mod nn;
pub mod objective;
pub mod rng;
pub mod sampling;
pub mod synth;
pub mod trainer;
pub mod video;
