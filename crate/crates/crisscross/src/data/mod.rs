//! Core value types, dataset manifest handling, media containers, and run
//! configuration shared by the whole pipeline.

mod config;
mod manifest;
mod media;
mod types;

pub use config::{
    default_audio_aug_params, default_video_aug_params, AudioAugParams, ConfigViolation,
    LossMask, MelParams, Modalities, ModelConfig, ModelPreset, OptimizerConfig, PredictorMode,
    RunConfig, SamplerSpec, SamplingStrategy, VideoAugParams,
};
pub use manifest::{load_manifest, write_manifest, DatasetManifest, ManifestEntry, Split};
pub use media::{
    load_stored_clip, read_raw_video, read_wav_pcm16, store_clip, write_raw_video,
    write_wav_pcm16, StoredClip, RAW_VIDEO_MAGIC, RAW_VIDEO_VERSION,
};
pub use types::{AVClip, FrameSequence, TimeWindow, WaveformClip};

use thiserror::Error;

/// Errors produced by dataset and media handling.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("manifest line {line}: {msg}")]
    MalformedLine { line: usize, msg: String },
    #[error("duplicate clip_id `{clip_id}` at lines {first} and {second}")]
    DuplicateClipId {
        clip_id: String,
        first: usize,
        second: usize,
    },
    #[error("manifest line {line}: media path does not exist: {path}")]
    DanglingMediaPath { line: usize, path: String },
    #[error("invalid {what}: {msg}")]
    InvalidValue { what: String, msg: String },
    #[error("bad media container {path}: {msg}")]
    BadContainer { path: String, msg: String },
}

impl DataError {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        DataError::Io {
            path: path.into(),
            source,
        }
    }
}
