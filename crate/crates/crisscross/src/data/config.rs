//! Run configuration: sampler, augmentations, model, optimizer, loss mask.
//!
//! The on-disk form is a TOML document whose key names are normative (see
//! `docs/config.md` in the repository root). `validate` returns the complete
//! list of violations rather than failing on the first.

use serde::{Deserialize, Serialize};

/// The five temporal view-sampling strategies, ordered by increasing
/// relaxation of cross-modal synchronicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingStrategy {
    Same,
    Overlapped,
    Adjacent,
    FarApart,
    Random,
}

impl SamplingStrategy {
    pub const ALL: [SamplingStrategy; 5] = [
        SamplingStrategy::Same,
        SamplingStrategy::Overlapped,
        SamplingStrategy::Adjacent,
        SamplingStrategy::FarApart,
        SamplingStrategy::Random,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SamplingStrategy::Same => "same",
            SamplingStrategy::Overlapped => "overlapped",
            SamplingStrategy::Adjacent => "adjacent",
            SamplingStrategy::FarApart => "far_apart",
            SamplingStrategy::Random => "random",
        }
    }
}

/// Temporal sampler geometry: audio windows carry the view timestamp, the
/// video window is centered inside its audio window.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct SamplerSpec {
    pub strategy: SamplingStrategy,
    #[serde(default = "default_audio_win")]
    pub audio_win_s: f64,
    #[serde(default = "default_video_win")]
    pub video_win_s: f64,
}

fn default_audio_win() -> f64 {
    2.0
}
fn default_video_win() -> f64 {
    0.5
}

impl Default for SamplerSpec {
    fn default() -> Self {
        Self {
            strategy: SamplingStrategy::Overlapped,
            audio_win_s: 2.0,
            video_win_s: 0.5,
        }
    }
}

/// Visual augmentation parameters (defaults follow the reference setup).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct VideoAugParams {
    pub multi_scale_crop: bool,
    pub min_area: f64,
    pub aspect_range: (f64, f64),
    pub out_size: usize,
    pub horizontal_flip: bool,
    pub flip_p: f64,
    pub color_jitter: bool,
    pub brightness: f64,
    pub contrast: f64,
    pub saturation: f64,
    pub hue: f64,
    pub gray_scale: bool,
    pub gray_p: f64,
    pub gaussian_blur: bool,
    pub blur_p: f64,
    pub blur_sigma: (f64, f64),
    pub cutout: bool,
    pub cutout_max_size: usize,
    pub cutout_num: usize,
    pub temporal_consistency: bool,
}

impl Default for VideoAugParams {
    fn default() -> Self {
        Self {
            multi_scale_crop: true,
            min_area: 0.08,
            aspect_range: (0.75, 4.0 / 3.0),
            out_size: 112,
            horizontal_flip: true,
            flip_p: 0.5,
            color_jitter: true,
            brightness: 0.4,
            contrast: 0.4,
            saturation: 0.4,
            hue: 0.2,
            gray_scale: true,
            gray_p: 0.2,
            gaussian_blur: true,
            blur_p: 0.5,
            blur_sigma: (0.1, 2.0),
            cutout: true,
            cutout_max_size: 20,
            cutout_num: 1,
            temporal_consistency: true,
        }
    }
}

pub fn default_video_aug_params() -> VideoAugParams {
    VideoAugParams::default()
}

/// Mel-spectrogram extraction settings.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct MelParams {
    pub n_mels: usize,
    pub hop_ms: f64,
    pub fft_len: usize,
    pub log_eps: f64,
}

impl Default for MelParams {
    fn default() -> Self {
        Self {
            n_mels: 80,
            hop_ms: 10.0,
            fft_len: 1024,
            log_eps: 1e-6,
        }
    }
}

/// Audio augmentation parameters (defaults follow the reference setup).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct AudioAugParams {
    pub volume_jitter: bool,
    pub volume_jitter_range: f64,
    pub time_mask: bool,
    pub time_mask_max_size: usize,
    pub time_mask_num: usize,
    pub freq_mask: bool,
    pub freq_mask_max_size: usize,
    pub freq_mask_num: usize,
    pub time_warp: bool,
    pub time_warp_window: usize,
    pub random_crop: bool,
    pub random_crop_range: (f64, f64),
    pub random_crop_scale: (f64, f64),
    pub mel: MelParams,
}

impl Default for AudioAugParams {
    fn default() -> Self {
        Self {
            volume_jitter: true,
            volume_jitter_range: 0.2,
            time_mask: true,
            time_mask_max_size: 20,
            time_mask_num: 2,
            freq_mask: true,
            freq_mask_max_size: 10,
            freq_mask_num: 2,
            time_warp: true,
            time_warp_window: 20,
            random_crop: true,
            random_crop_range: (0.6, 1.5),
            random_crop_scale: (1.0, 1.5),
            mel: MelParams::default(),
        }
    }
}

pub fn default_audio_aug_params() -> AudioAugParams {
    AudioAugParams::default()
}

/// Encoder size preset. `tiny` is the executable default; `paper` builds the
/// full reference backbones (R(2+1)D-18 video, ResNet-18 audio).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelPreset {
    Tiny,
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PredictorMode {
    Separate,
    Common,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct ModelConfig {
    pub preset: ModelPreset,
    pub projector_layers: usize,
    pub predictor_mode: PredictorMode,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            preset: ModelPreset::Tiny,
            projector_layers: 3,
            predictor_mode: PredictorMode::Separate,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct OptimizerConfig {
    pub batch_size: usize,
    /// Number of sampled views per epoch (may oversample the train split).
    pub epoch_size: usize,
    pub epochs: usize,
    pub base_lr_start: f64,
    pub base_lr_end: f64,
    /// Predictor learning rate = multiplier x base_lr_start, held constant.
    pub predictor_lr_multiplier: f64,
    pub weight_decay: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    pub warmup_steps: usize,
    pub trust_ratio_clip: bool,
    pub trust_coefficient: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        // Desk-scale values, scaled down from the Kinetics-Sound recipe.
        Self {
            batch_size: 32,
            epoch_size: 640,
            epochs: 30,
            base_lr_start: 2e-4,
            base_lr_end: 0.0,
            predictor_lr_multiplier: 10.0,
            weight_decay: 1e-4,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            warmup_steps: 0,
            trust_ratio_clip: false,
            trust_coefficient: 0.02,
        }
    }
}

/// Which loss aggregates participate in the objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LossMask {
    pub intra: bool,
    pub sync: bool,
    #[serde(rename = "async")]
    pub asynchronous: bool,
}

impl LossMask {
    pub const FULL: LossMask = LossMask {
        intra: true,
        sync: true,
        asynchronous: true,
    };

    pub fn is_empty(&self) -> bool {
        !(self.intra || self.sync || self.asynchronous)
    }

    pub fn active_count(&self) -> usize {
        self.intra as usize + self.sync as usize + self.asynchronous as usize
    }

    /// Parse a comma-separated list like `"intra,sync,async"`.
    pub fn parse(s: &str) -> Result<LossMask, String> {
        let mut mask = LossMask {
            intra: false,
            sync: false,
            asynchronous: false,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "intra" => mask.intra = true,
                "sync" => mask.sync = true,
                "async" => mask.asynchronous = true,
                other => return Err(format!("unknown loss term `{other}`")),
            }
        }
        Ok(mask)
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.intra {
            parts.push("intra");
        }
        if self.sync {
            parts.push("sync");
        }
        if self.asynchronous {
            parts.push("async");
        }
        parts.join("+")
    }
}

impl Default for LossMask {
    fn default() -> Self {
        LossMask::FULL
    }
}

/// Which modality branches are trained. `Video`/`Audio` give the uni-modal
/// baselines (intra-modal loss only, single branch).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Modalities {
    #[default]
    Both,
    Video,
    Audio,
}

/// Complete run configuration for pretraining.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
#[serde(default)]
pub struct RunConfig {
    pub seed: u64,
    pub sampler: SamplerSpec,
    pub video_augs: VideoAugParams,
    pub audio_augs: AudioAugParams,
    pub model: ModelConfig,
    pub optimizer: OptimizerConfig,
    pub loss_mask: LossMask,
    pub modalities: Modalities,
    pub checkpoint_every_epochs: usize,
}

/// One invariant breach found by [`RunConfig::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigViolation {
    pub field: String,
    pub msg: String,
}

impl std::fmt::Display for ConfigViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.msg)
    }
}

impl RunConfig {
    /// Desk-scale preset: minute-scale pretraining with the tiny encoders.
    pub fn desk() -> Self {
        Self {
            seed: 0,
            checkpoint_every_epochs: 10,
            ..Self::default()
        }
    }

    /// The Kinetics-Sound recipe (documented reference; compute-bound).
    pub fn kinetics_sound() -> Self {
        let mut cfg = Self::desk();
        cfg.model.preset = ModelPreset::Paper;
        cfg.optimizer.batch_size = 512;
        cfg.optimizer.epoch_size = 220_000;
        cfg.optimizer.epochs = 100;
        cfg.optimizer.base_lr_start = 2e-4;
        cfg.optimizer.base_lr_end = 0.0;
        cfg.optimizer.predictor_lr_multiplier = 10.0;
        cfg.optimizer.weight_decay = 1e-4;
        cfg
    }

    pub fn preset_by_name(name: &str) -> Option<Self> {
        match name {
            "desk" => Some(Self::desk()),
            "kinetics_sound" => Some(Self::kinetics_sound()),
            _ => None,
        }
    }

    /// Predictor learning rate (constant across training).
    pub fn predictor_lr(&self) -> f64 {
        self.optimizer.base_lr_start * self.optimizer.predictor_lr_multiplier
    }

    /// Check every invariant; returns the complete list of violations.
    /// Side-effect free and idempotent.
    pub fn validate(&self) -> Vec<ConfigViolation> {
        let mut v = Vec::new();
        let mut push = |field: &str, msg: String| {
            v.push(ConfigViolation {
                field: field.into(),
                msg,
            })
        };
        if self.loss_mask.is_empty() {
            push("loss_mask", "empty loss mask".into());
        }
        if !matches!(self.model.projector_layers, 2 | 3) {
            push(
                "model.projector_layers",
                format!(
                    "must be one of {{2, 3}}, got {}",
                    self.model.projector_layers
                ),
            );
        }
        if !(self.optimizer.predictor_lr_multiplier > 0.0) {
            push(
                "optimizer.predictor_lr_multiplier",
                format!("must be > 0, got {}", self.optimizer.predictor_lr_multiplier),
            );
        }
        if self.optimizer.epoch_size < self.optimizer.batch_size {
            push(
                "optimizer.epoch_size",
                format!(
                    "must be >= batch_size ({} < {})",
                    self.optimizer.epoch_size, self.optimizer.batch_size
                ),
            );
        }
        if self.optimizer.batch_size == 0 {
            push("optimizer.batch_size", "must be > 0".into());
        }
        if self.optimizer.epochs == 0 {
            push("optimizer.epochs", "must be > 0".into());
        }
        if !(self.optimizer.base_lr_start > 0.0) {
            push(
                "optimizer.base_lr_start",
                format!("must be > 0, got {}", self.optimizer.base_lr_start),
            );
        }
        if self.optimizer.base_lr_end < 0.0 {
            push(
                "optimizer.base_lr_end",
                format!("must be >= 0, got {}", self.optimizer.base_lr_end),
            );
        }
        for (name, b) in [
            ("optimizer.beta1", self.optimizer.beta1),
            ("optimizer.beta2", self.optimizer.beta2),
        ] {
            if !(0.0..1.0).contains(&b) {
                push(name, format!("must lie in [0, 1), got {b}"));
            }
        }
        if !(self.sampler.video_win_s > 0.0
            && self.sampler.video_win_s <= self.sampler.audio_win_s)
        {
            push(
                "sampler",
                format!(
                    "need 0 < video_win_s <= audio_win_s, got {} and {}",
                    self.sampler.video_win_s, self.sampler.audio_win_s
                ),
            );
        }
        let va = &self.video_augs;
        if !(va.min_area > 0.0 && va.min_area <= 1.0) {
            push("video_augs.min_area", format!("must lie in (0, 1], got {}", va.min_area));
        }
        if va.out_size < 8 {
            push("video_augs.out_size", format!("must be >= 8, got {}", va.out_size));
        }
        for (name, p) in [
            ("video_augs.flip_p", va.flip_p),
            ("video_augs.gray_p", va.gray_p),
            ("video_augs.blur_p", va.blur_p),
        ] {
            if !(0.0..=1.0).contains(&p) {
                push(name, format!("probability must lie in [0, 1], got {p}"));
            }
        }
        let aa = &self.audio_augs;
        if !(aa.volume_jitter_range >= 0.0 && aa.volume_jitter_range < 1.0) {
            push(
                "audio_augs.volume_jitter_range",
                format!("magnitude must lie in [0, 1), got {}", aa.volume_jitter_range),
            );
        }
        for (name, (lo, hi)) in [
            ("audio_augs.random_crop_range", aa.random_crop_range),
            ("audio_augs.random_crop_scale", aa.random_crop_scale),
        ] {
            if !(lo > 0.0 && lo <= hi) {
                push(name, format!("need 0 < low <= high, got [{lo}, {hi}]"));
            }
        }
        v
    }
}
