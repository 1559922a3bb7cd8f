//! Domain value types: time windows, waveforms, frame sequences, paired clips.

use ndarray::{Array1, Array4};

use super::DataError;

/// A half-open time interval `[start_s, start_s + duration_s)` within a clip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeWindow {
    pub start_s: f64,
    pub duration_s: f64,
}

impl TimeWindow {
    pub fn new(start_s: f64, duration_s: f64) -> Result<Self, DataError> {
        if !(start_s >= 0.0) {
            return Err(DataError::InvalidValue {
                what: "TimeWindow.start_s".into(),
                msg: format!("must be >= 0, got {start_s}"),
            });
        }
        if !(duration_s > 0.0) {
            return Err(DataError::InvalidValue {
                what: "TimeWindow.duration_s".into(),
                msg: format!("must be > 0, got {duration_s}"),
            });
        }
        Ok(Self { start_s, duration_s })
    }

    pub fn end_s(&self) -> f64 {
        self.start_s + self.duration_s
    }

    /// Length of the intersection with `other`, in seconds.
    pub fn overlap_s(&self, other: &TimeWindow) -> f64 {
        let lo = self.start_s.max(other.start_s);
        let hi = self.end_s().min(other.end_s());
        (hi - lo).max(0.0)
    }

    pub fn contains(&self, other: &TimeWindow) -> bool {
        other.start_s >= self.start_s - 1e-9 && other.end_s() <= self.end_s() + 1e-9
    }
}

/// A mono waveform with nominal amplitude range [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct WaveformClip {
    pub samples: Array1<f64>,
    pub sample_rate_hz: f64,
}

impl WaveformClip {
    pub fn new(samples: Array1<f64>, sample_rate_hz: f64) -> Result<Self, DataError> {
        if samples.is_empty() {
            return Err(DataError::InvalidValue {
                what: "WaveformClip.samples".into(),
                msg: "must contain at least one sample".into(),
            });
        }
        if !(sample_rate_hz > 0.0) {
            return Err(DataError::InvalidValue {
                what: "WaveformClip.sample_rate_hz".into(),
                msg: format!("must be > 0, got {sample_rate_hz}"),
            });
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }
}

/// A frame sequence stored as `T x H x W x 3`, values in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSequence {
    pub frames: Array4<f64>,
    pub fps: f64,
}

impl FrameSequence {
    pub fn new(frames: Array4<f64>, fps: f64) -> Result<Self, DataError> {
        let (t, h, w, c) = frames.dim();
        if t < 1 {
            return Err(DataError::InvalidValue {
                what: "FrameSequence.frames".into(),
                msg: "needs at least one frame".into(),
            });
        }
        if h < 8 || w < 8 {
            return Err(DataError::InvalidValue {
                what: "FrameSequence.frames".into(),
                msg: format!("frame size {h}x{w} below minimum 8x8"),
            });
        }
        if c != 3 {
            return Err(DataError::InvalidValue {
                what: "FrameSequence.frames".into(),
                msg: format!("expected 3 channels, got {c}"),
            });
        }
        if !(fps > 0.0) {
            return Err(DataError::InvalidValue {
                what: "FrameSequence.fps".into(),
                msg: format!("must be > 0, got {fps}"),
            });
        }
        if frames.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
            return Err(DataError::InvalidValue {
                what: "FrameSequence.frames".into(),
                msg: "pixel values must lie in [0, 1]".into(),
            });
        }
        Ok(Self { frames, fps })
    }

    pub fn len(&self) -> usize {
        self.frames.dim().0
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn duration_s(&self) -> f64 {
        self.len() as f64 / self.fps
    }
}

/// A paired raw waveform + frame sequence: the unit of source data.
#[derive(Debug, Clone)]
pub struct AVClip {
    pub waveform: WaveformClip,
    pub video: FrameSequence,
    pub duration_s: f64,
    pub label: Option<u32>,
}

impl AVClip {
    /// Pair up the two modalities. Durations must agree to within one frame
    /// period; the clip duration is the shorter of the two.
    pub fn new(
        waveform: WaveformClip,
        video: FrameSequence,
        label: Option<u32>,
    ) -> Result<Self, DataError> {
        let da = waveform.duration_s();
        let dv = video.duration_s();
        let tol = 1.0 / video.fps;
        if (da - dv).abs() > tol + 1e-9 {
            return Err(DataError::InvalidValue {
                what: "AVClip".into(),
                msg: format!(
                    "modality durations differ by {:.4}s (> one frame period {:.4}s)",
                    (da - dv).abs(),
                    tol
                ),
            });
        }
        Ok(Self {
            waveform,
            video,
            duration_s: da.min(dv),
            label,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array4;

    fn wave(n: usize, sr: f64) -> WaveformClip {
        WaveformClip::new(Array1::zeros(n), sr).unwrap()
    }

    fn frames(t: usize, hw: usize, fps: f64) -> FrameSequence {
        FrameSequence::new(Array4::zeros((t, hw, hw, 3)), fps).unwrap()
    }

    #[test]
    fn window_overlap() {
        let a = TimeWindow::new(1.0, 2.0).unwrap();
        let b = TimeWindow::new(2.0, 2.0).unwrap();
        assert!((a.overlap_s(&b) - 1.0).abs() < 1e-12);
        let c = TimeWindow::new(3.0, 1.0).unwrap();
        assert_eq!(a.overlap_s(&c), 0.0);
    }

    #[test]
    fn rejects_bad_windows() {
        assert!(TimeWindow::new(-0.1, 1.0).is_err());
        assert!(TimeWindow::new(0.0, 0.0).is_err());
    }

    #[test]
    fn avclip_duration_is_min_of_modalities() {
        let clip = AVClip::new(wave(32_000, 16_000.0), frames(32, 16, 16.0), None).unwrap();
        assert!((clip.duration_s - 2.0).abs() < 1e-9);
    }

    #[test]
    fn avclip_rejects_duration_mismatch() {
        // 2 s of audio vs 1 s of video at 16 fps.
        assert!(AVClip::new(wave(32_000, 16_000.0), frames(16, 16, 16.0), None).is_err());
    }

    #[test]
    fn frame_values_validated() {
        let mut f = Array4::zeros((2, 8, 8, 3));
        f[[0, 0, 0, 0]] = 1.5;
        assert!(FrameSequence::new(f, 16.0).is_err());
    }
}
