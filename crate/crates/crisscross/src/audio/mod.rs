//! Audio pipeline: waveform conditioning, log-mel spectrogram extraction,
//! and spectrogram-domain augmentations.

mod augment;
mod mel;
mod resample;

pub use augment::{
    augment_audio, freq_mask, random_crop_spec, time_mask, time_warp, volume_jitter,
    AudioAugTrace, CropTrace,
};
pub use mel::{mel_filterbank, mel_spectrogram, MelSpectrogram};
pub use resample::resample;

use thiserror::Error;

/// Augmentation mode: pretraining or frozen-feature extraction for linear
/// evaluation. The mode decides which augmentations of an enabled set apply
/// (no time-warp during pretraining; all four for eval features).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AugMode {
    Pretrain,
    EvalFeature,
}

#[derive(Debug, Error)]
pub enum AudioError {
    #[error("cannot resample from {source_hz} Hz up to {target_hz} Hz")]
    UpsamplingRequest { source_hz: f64, target_hz: f64 },
    #[error("waveform of {samples} samples is shorter than one analysis window ({fft_len})")]
    TooShortForWindow { samples: usize, fft_len: usize },
    #[error("spectrogram with {t} columns too narrow for time warp window {window}")]
    TooNarrowForWarp { t: usize, window: usize },
    #[error("invalid parameter {what}: {msg}")]
    InvalidParam { what: String, msg: String },
}
