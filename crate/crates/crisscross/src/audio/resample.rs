//! Band-limited waveform resampling (downsampling only).

use ndarray::Array1;

use super::AudioError;
use crate::data::WaveformClip;

/// Half-width of the windowed-sinc kernel, in output-rate sample periods.
const KERNEL_HALF_WIDTH: f64 = 32.0;

/// Downsample `wave` to `target_hz` with a Hann-windowed sinc low-pass.
/// Output length is `round(len * target/source)`. The identity rate is a
/// pass-through; upsampling is rejected.
pub fn resample(wave: &WaveformClip, target_hz: f64) -> Result<WaveformClip, AudioError> {
    let source_hz = wave.sample_rate_hz;
    if target_hz > source_hz {
        return Err(AudioError::UpsamplingRequest {
            source_hz,
            target_hz,
        });
    }
    if (target_hz - source_hz).abs() < 1e-9 {
        return Ok(wave.clone());
    }
    let ratio = target_hz / source_hz; // < 1
    let n_in = wave.samples.len();
    let n_out = (n_in as f64 * ratio).round() as usize;
    // Cutoff at the target Nyquist, expressed in input-rate units.
    let fc = 0.5 * ratio;
    let half_width_in = KERNEL_HALF_WIDTH / ratio; // input samples
    let x = wave.samples.as_slice().expect("contiguous waveform");
    let mut out = Array1::<f64>::zeros(n_out);
    for (n, y) in out.iter_mut().enumerate() {
        let center = n as f64 / ratio;
        let k_lo = (center - half_width_in).ceil().max(0.0) as usize;
        let k_hi = ((center + half_width_in).floor() as usize).min(n_in - 1);
        let mut acc = 0.0;
        for k in k_lo..=k_hi {
            let t = k as f64 - center;
            acc += x[k] * windowed_sinc(t, fc, half_width_in);
        }
        *y = acc;
    }
    Ok(WaveformClip {
        samples: out,
        sample_rate_hz: target_hz,
    })
}

fn windowed_sinc(t: f64, fc: f64, half_width: f64) -> f64 {
    let sinc = if t.abs() < 1e-12 {
        1.0
    } else {
        let a = std::f64::consts::PI * 2.0 * fc * t;
        a.sin() / a
    };
    // Hann window over [-half_width, half_width].
    let w = 0.5 * (1.0 + (std::f64::consts::PI * t / half_width).cos());
    2.0 * fc * sinc * w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sine(freq: f64, sr: f64, n: usize) -> WaveformClip {
        let samples =
            Array1::from_iter((0..n).map(|i| (2.0 * std::f64::consts::PI * freq * i as f64 / sr).sin()));
        WaveformClip {
            samples,
            sample_rate_hz: sr,
        }
    }

    #[test]
    fn halving_the_rate_halves_the_length() {
        let w = sine(440.0, 32_000.0, 64_000);
        let r = resample(&w, 16_000.0).unwrap();
        assert_eq!(r.samples.len(), 32_000);
        assert_eq!(r.sample_rate_hz, 16_000.0);
    }

    #[test]
    fn identity_rate_is_passthrough() {
        let w = sine(440.0, 16_000.0, 1_000);
        let r = resample(&w, 16_000.0).unwrap();
        assert_eq!(r.samples, w.samples);
    }

    #[test]
    fn upsampling_is_rejected() {
        let w = sine(440.0, 16_000.0, 1_000);
        assert!(resample(&w, 32_000.0).is_err());
    }

    #[test]
    fn low_sine_survives_with_40db_snr() {
        let sr_in = 32_000.0;
        let sr_out = 16_000.0;
        let w = sine(100.0, sr_in, 64_000);
        let r = resample(&w, sr_out).unwrap();
        // Compare against the analytic sine away from the filter edges.
        let margin = 200;
        let mut sig = 0.0;
        let mut err = 0.0;
        for n in margin..(r.samples.len() - margin) {
            let expect = (2.0 * std::f64::consts::PI * 100.0 * n as f64 / sr_out).sin();
            sig += expect * expect;
            let e = r.samples[n] - expect;
            err += e * e;
        }
        let snr_db = 10.0 * (sig / err).log10();
        assert!(snr_db >= 40.0, "SNR {snr_db:.1} dB below 40 dB");
    }
}
