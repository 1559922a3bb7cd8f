//! Audio augmentations: volume jitter on the waveform, then masking, random
//! crop, and time warp on the spectrogram.
//!
//! Every transform returns a trace of the random decisions it made so tests
//! (and reproducibility tooling) can assert on what was actually applied.

use ndarray::Array2;
use rand::Rng;

use super::mel::{mel_spectrogram, MelSpectrogram};
use super::{AudioError, AugMode};
use crate::data::{AudioAugParams, WaveformClip};
use crate::rng::Stream;

/// Random-crop decision record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CropTrace {
    pub canvas_len: usize,
    pub content_offset: usize,
    pub crop_start: usize,
    pub crop_width: usize,
}

/// Record of the random draws made while augmenting one audio view.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AudioAugTrace {
    pub gain: Option<f64>,
    pub crop: Option<CropTrace>,
    pub time_mask_bands: Vec<(usize, usize)>,
    pub freq_mask_bands: Vec<(usize, usize)>,
    pub warp_shift: Option<i64>,
}

fn uniform(rng: &mut Stream, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

/// Scale the waveform by a gain drawn from `U[1 - range, 1 + range]`.
/// Returns the jittered waveform and the gain that was applied.
pub fn volume_jitter(
    wave: &WaveformClip,
    range: f64,
    rng: &mut Stream,
) -> (WaveformClip, f64) {
    let gain = if range == 0.0 {
        1.0
    } else {
        uniform(rng, 1.0 - range, 1.0 + range)
    };
    (
        WaveformClip {
            samples: &wave.samples * gain,
            sample_rate_hz: wave.sample_rate_hz,
        },
        gain,
    )
}

fn mask_bands(
    len: usize,
    max_size: usize,
    num: usize,
    rng: &mut Stream,
) -> Vec<(usize, usize)> {
    let mut bands = Vec::with_capacity(num);
    for _ in 0..num {
        let width = rng.gen_range(0..=max_size.min(len.saturating_sub(1)));
        let start = if len > width {
            rng.gen_range(0..(len - width + 1))
        } else {
            0
        };
        bands.push((start, width));
    }
    bands
}

/// Mask `num` column bands of width `U{0..max_size}` with the spectrogram
/// mean. Returns the masked spectrogram and the bands chosen.
pub fn time_mask(
    spec: &MelSpectrogram,
    max_size: usize,
    num: usize,
    rng: &mut Stream,
) -> (MelSpectrogram, Vec<(usize, usize)>) {
    let t = spec.frames();
    let fill = spec.mean();
    let bands = mask_bands(t, max_size, num, rng);
    let mut out = spec.clone();
    for &(start, width) in &bands {
        out.values
            .slice_mut(ndarray::s![.., start..start + width])
            .fill(fill);
    }
    (out, bands)
}

/// Row-band analogue of [`time_mask`].
pub fn freq_mask(
    spec: &MelSpectrogram,
    max_size: usize,
    num: usize,
    rng: &mut Stream,
) -> (MelSpectrogram, Vec<(usize, usize)>) {
    let fill = spec.mean();
    let bands = mask_bands(spec.n_mels, max_size, num, rng);
    let mut out = spec.clone();
    for &(start, width) in &bands {
        out.values
            .slice_mut(ndarray::s![start..start + width, ..])
            .fill(fill);
    }
    (out, bands)
}

/// Linear interpolation of `values` columns at fractional position `src`.
fn sample_columns(values: &Array2<f64>, src: f64, out_col: &mut ndarray::ArrayViewMut1<f64>) {
    let t = values.dim().1;
    let src = src.clamp(0.0, (t - 1) as f64);
    let lo = src.floor() as usize;
    let hi = (lo + 1).min(t - 1);
    let frac = src - lo as f64;
    for (m, v) in out_col.iter_mut().enumerate() {
        *v = values[[m, lo]] * (1.0 - frac) + values[[m, hi]] * frac;
    }
}

/// Displace a pivot column by `U{-window..window}` and linearly resample the
/// two sides so the total width is preserved.
pub fn time_warp(
    spec: &MelSpectrogram,
    window: usize,
    rng: &mut Stream,
) -> Result<(MelSpectrogram, i64), AudioError> {
    let t = spec.frames();
    if t <= 2 * window {
        return Err(AudioError::TooNarrowForWarp { t, window });
    }
    let pivot = rng.gen_range(window..=(t - 1 - window));
    let shift = rng.gen_range(-(window as i64)..=(window as i64));
    let target = ((pivot as i64 + shift).max(1) as usize).min(t - 2);
    let mut out = spec.clone();
    for j in 0..t {
        let src = if j <= target {
            j as f64 * pivot as f64 / target as f64
        } else {
            pivot as f64
                + (j - target) as f64 * (t - 1 - pivot) as f64 / (t - 1 - target) as f64
        };
        let mut col = out.values.column_mut(j);
        sample_columns(&spec.values, src, &mut col);
    }
    Ok((out, target as i64 - pivot as i64))
}

/// Place the content on a canvas `crop_scale x` the time axis, crop a window
/// whose width is `U[range] x T`, and resize back to the original shape.
/// Off-content canvas cells hold the spectrogram mean.
pub fn random_crop_spec(
    spec: &MelSpectrogram,
    range: (f64, f64),
    crop_scale: (f64, f64),
    rng: &mut Stream,
) -> (MelSpectrogram, CropTrace) {
    let t = spec.frames();
    let n_mels = spec.n_mels;
    let canvas_factor = uniform(rng, crop_scale.0, crop_scale.1);
    let canvas_len = ((canvas_factor * t as f64).round() as usize).max(t);
    let content_offset = if canvas_len > t {
        rng.gen_range(0..=(canvas_len - t))
    } else {
        0
    };
    let scale = uniform(rng, range.0, range.1);
    let crop_width = ((scale * t as f64).round() as usize).clamp(1, canvas_len);
    let crop_start = if canvas_len > crop_width {
        rng.gen_range(0..=(canvas_len - crop_width))
    } else {
        0
    };

    let fill = spec.mean();
    let mut canvas = Array2::<f64>::from_elem((n_mels, canvas_len), fill);
    canvas
        .slice_mut(ndarray::s![.., content_offset..content_offset + t])
        .assign(&spec.values);

    let crop = canvas.slice(ndarray::s![.., crop_start..crop_start + crop_width]);
    let crop = crop.to_owned();
    let mut out = spec.clone();
    for j in 0..t {
        // Half-pixel-center mapping; width == t degenerates to identity.
        let src = (j as f64 + 0.5) * crop_width as f64 / t as f64 - 0.5;
        let mut col = out.values.column_mut(j);
        sample_columns(&crop, src, &mut col);
    }
    (
        out,
        CropTrace {
            canvas_len,
            content_offset,
            crop_start,
            crop_width,
        },
    )
}

/// Full audio augmentation: volume jitter on the waveform, mel extraction,
/// then random crop, time mask, frequency mask, and (eval mode only) time
/// warp — in that order.
pub fn augment_audio(
    wave: &WaveformClip,
    params: &AudioAugParams,
    mode: AugMode,
    rng: &mut Stream,
) -> Result<(MelSpectrogram, AudioAugTrace), AudioError> {
    let mut trace = AudioAugTrace::default();
    let jittered;
    let wave = if params.volume_jitter {
        let (w, gain) = volume_jitter(wave, params.volume_jitter_range, rng);
        trace.gain = Some(gain);
        jittered = w;
        &jittered
    } else {
        wave
    };
    let mut spec = mel_spectrogram(wave, &params.mel)?;
    if params.random_crop {
        let (s, crop) = random_crop_spec(&spec, params.random_crop_range, params.random_crop_scale, rng);
        spec = s;
        trace.crop = Some(crop);
    }
    if params.time_mask {
        let (s, bands) = time_mask(&spec, params.time_mask_max_size, params.time_mask_num, rng);
        spec = s;
        trace.time_mask_bands = bands;
    }
    if params.freq_mask {
        let (s, bands) = freq_mask(&spec, params.freq_mask_max_size, params.freq_mask_num, rng);
        spec = s;
        trace.freq_mask_bands = bands;
    }
    if params.time_warp && mode == AugMode::EvalFeature {
        let (s, shift) = time_warp(&spec, params.time_warp_window, rng)?;
        spec = s;
        trace.warp_shift = Some(shift);
    }
    Ok((spec, trace))
}
