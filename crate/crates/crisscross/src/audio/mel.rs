//! Log-mel spectrogram extraction.
//!
//! Framing: the waveform is zero-padded by `fft_len/2` on both sides and an
//! exact `T = round(duration_ms / hop_ms)` frames are taken, so a 2 s clip at
//! 16 kHz with a 10 ms hop always yields an 80x200 matrix. Values are
//! `ln(mel_power + eps)`. Mel scale is the HTK formula, filters span 0 Hz to
//! Nyquist with unit-peak triangles, and the analysis window is a periodic
//! Hann of length `fft_len`.

use ndarray::Array2;
use rustfft::{num_complex::Complex, FftPlanner};

use super::AudioError;
use crate::data::{MelParams, WaveformClip};

/// A log-power mel spectrogram, stored `n_mels x T`.
#[derive(Debug, Clone, PartialEq)]
pub struct MelSpectrogram {
    pub values: Array2<f64>,
    pub n_mels: usize,
    pub hop_ms: f64,
    pub fft_len: usize,
}

impl MelSpectrogram {
    pub fn frames(&self) -> usize {
        self.values.dim().1
    }

    pub fn mean(&self) -> f64 {
        self.values.mean().unwrap_or(0.0)
    }
}

fn hz_to_mel(f: f64) -> f64 {
    2595.0 * (1.0 + f / 700.0).log10()
}

fn mel_to_hz(m: f64) -> f64 {
    700.0 * (10f64.powf(m / 2595.0) - 1.0)
}

/// Triangular mel filterbank, `n_mels x (fft_len/2 + 1)`, unit peak.
pub fn mel_filterbank(n_mels: usize, fft_len: usize, sample_rate_hz: f64) -> Array2<f64> {
    let n_bins = fft_len / 2 + 1;
    let f_max = sample_rate_hz / 2.0;
    let mel_lo = hz_to_mel(0.0);
    let mel_hi = hz_to_mel(f_max);
    let centers: Vec<f64> = (0..n_mels + 2)
        .map(|i| mel_to_hz(mel_lo + (mel_hi - mel_lo) * i as f64 / (n_mels + 1) as f64))
        .collect();
    let mut fb = Array2::<f64>::zeros((n_mels, n_bins));
    for m in 0..n_mels {
        let (lo, mid, hi) = (centers[m], centers[m + 1], centers[m + 2]);
        for b in 0..n_bins {
            let f = b as f64 * sample_rate_hz / fft_len as f64;
            let w = if f >= lo && f <= mid && mid > lo {
                (f - lo) / (mid - lo)
            } else if f > mid && f <= hi && hi > mid {
                (hi - f) / (hi - mid)
            } else {
                0.0
            };
            fb[[m, b]] = w;
        }
    }
    fb
}

/// Compute the log-mel spectrogram of `wave` under `params`.
pub fn mel_spectrogram(
    wave: &WaveformClip,
    params: &MelParams,
) -> Result<MelSpectrogram, AudioError> {
    let n = wave.samples.len();
    let fft_len = params.fft_len;
    if n < fft_len {
        return Err(AudioError::TooShortForWindow {
            samples: n,
            fft_len,
        });
    }
    let sr = wave.sample_rate_hz;
    let duration_ms = n as f64 / sr * 1000.0;
    let t_frames = (duration_ms / params.hop_ms).round() as usize;
    let hop = (sr * params.hop_ms / 1000.0).round() as usize;
    let half = fft_len / 2;

    // Periodic Hann window.
    let window: Vec<f64> = (0..fft_len)
        .map(|i| 0.5 * (1.0 - (2.0 * std::f64::consts::PI * i as f64 / fft_len as f64).cos()))
        .collect();

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(fft_len);
    let x = wave.samples.as_slice().expect("contiguous waveform");

    let n_bins = fft_len / 2 + 1;
    let mut power = Array2::<f64>::zeros((n_bins, t_frames));
    let mut buf = vec![Complex::new(0.0, 0.0); fft_len];
    for t in 0..t_frames {
        let center = (t * hop) as isize;
        for (i, slot) in buf.iter_mut().enumerate() {
            let src = center - half as isize + i as isize;
            let v = if src >= 0 && (src as usize) < n {
                x[src as usize]
            } else {
                0.0
            };
            *slot = Complex::new(v * window[i], 0.0);
        }
        fft.process(&mut buf);
        for b in 0..n_bins {
            power[[b, t]] = buf[b].norm_sqr();
        }
    }

    let fb = mel_filterbank(params.n_mels, fft_len, sr);
    let mel_power = fb.dot(&power);
    let values = mel_power.mapv(|p| (p + params.log_eps).ln());
    Ok(MelSpectrogram {
        values,
        n_mels: params.n_mels,
        hop_ms: params.hop_ms,
        fft_len,
    })
}
