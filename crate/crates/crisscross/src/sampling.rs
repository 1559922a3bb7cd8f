//! Temporal view sampling: produce the two timestamped cross-modal views of
//! a source clip under the five relaxation strategies.
//!
//! A view's timestamp is the start of its audio window; the video window is
//! center-aligned inside the audio window. Clips too short for a strategy
//! are rejected, never padded.

use rand::Rng;
use thiserror::Error;

use crate::data::{
    AVClip, FrameSequence, SamplerSpec, SamplingStrategy, TimeWindow, WaveformClip,
};
use crate::rng::Stream;

#[derive(Debug, Error)]
pub enum SamplingError {
    #[error("clip of {duration_s:.3}s is too short for `{strategy}` sampling (needs >= {min_s:.3}s)")]
    InfeasibleClip {
        strategy: &'static str,
        duration_s: f64,
        min_s: f64,
    },
    #[error("window [{start:.3}, {end:.3}) overruns clip of {duration_s:.3}s")]
    WindowOutOfRange {
        start: f64,
        end: f64,
        duration_s: f64,
    },
    #[error("cannot resample video from {source_fps} fps up to {target_fps} fps")]
    UpsamplingRequest { source_fps: f64, target_fps: f64 },
}

/// The two timestamped cross-modal views drawn from one clip.
#[derive(Debug, Clone, PartialEq)]
pub struct ViewPair {
    pub strategy: SamplingStrategy,
    pub audio_windows: (TimeWindow, TimeWindow),
    pub video_windows: (TimeWindow, TimeWindow),
}

/// Minimum clip length (in audio-window units `d`) required by a strategy.
pub fn min_feasible_duration(strategy: SamplingStrategy, audio_win_s: f64) -> f64 {
    let d = audio_win_s;
    match strategy {
        SamplingStrategy::Same | SamplingStrategy::Random => d,
        SamplingStrategy::Overlapped => 1.5 * d,
        SamplingStrategy::Adjacent | SamplingStrategy::FarApart => 2.0 * d,
    }
}

fn uniform(rng: &mut Stream, lo: f64, hi: f64) -> f64 {
    if hi <= lo {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

/// Draw the two audio-window start times `(t1, t2)` for a clip of length `L`.
pub fn sample_view_timestamps(
    spec: &SamplerSpec,
    clip_duration_s: f64,
    rng: &mut Stream,
) -> Result<(f64, f64), SamplingError> {
    let d = spec.audio_win_s;
    let l = clip_duration_s;
    let min_s = min_feasible_duration(spec.strategy, d);
    if l + 1e-9 < min_s {
        return Err(SamplingError::InfeasibleClip {
            strategy: spec.strategy.name(),
            duration_s: l,
            min_s,
        });
    }
    let (t1, t2) = match spec.strategy {
        SamplingStrategy::Same => {
            let t1 = uniform(rng, 0.0, l - d);
            (t1, t1)
        }
        SamplingStrategy::Overlapped => {
            // Fixed half-window shift: the two audio windows share exactly
            // 50% overlap.
            let t1 = uniform(rng, 0.0, l - 1.5 * d);
            (t1, t1 + d / 2.0)
        }
        SamplingStrategy::Adjacent => {
            let t1 = uniform(rng, 0.0, l - 2.0 * d);
            (t1, t1 + d)
        }
        SamplingStrategy::Random => {
            let t1 = uniform(rng, 0.0, l - d);
            let t2 = uniform(rng, 0.0, l - d);
            (t1, t2)
        }
        SamplingStrategy::FarApart => {
            let t1 = uniform(rng, 0.0, l / 2.0 - d);
            let t2 = uniform(rng, l / 2.0, l - d);
            (t1, t2)
        }
    };
    Ok((t1, t2))
}

/// The audio and video windows of the view at timestamp `t`. The video
/// window is centered inside the audio window.
pub fn modality_windows(t: f64, spec: &SamplerSpec) -> (TimeWindow, TimeWindow) {
    let audio = TimeWindow {
        start_s: t,
        duration_s: spec.audio_win_s,
    };
    let video = TimeWindow {
        start_s: t + (spec.audio_win_s - spec.video_win_s) / 2.0,
        duration_s: spec.video_win_s,
    };
    (audio, video)
}

/// Draw a full [`ViewPair`] for a clip of the given duration.
pub fn sample_view_pair(
    spec: &SamplerSpec,
    clip_duration_s: f64,
    rng: &mut Stream,
) -> Result<ViewPair, SamplingError> {
    let (t1, t2) = sample_view_timestamps(spec, clip_duration_s, rng)?;
    let (a1, v1) = modality_windows(t1, spec);
    let (a2, v2) = modality_windows(t2, spec);
    Ok(ViewPair {
        strategy: spec.strategy,
        audio_windows: (a1, a2),
        video_windows: (v1, v2),
    })
}

/// Sample indices for cutting `n_out` frames at `target_fps` from a source
/// stream, starting at time `start_s`. Shared by the f64 and stored-clip
/// extraction paths.
pub fn video_frame_indices(
    start_s: f64,
    source_fps: f64,
    n_out: usize,
    target_fps: f64,
) -> Vec<usize> {
    let start_idx = (start_s * source_fps).round() as usize;
    let stride = source_fps / target_fps;
    (0..n_out)
        .map(|k| start_idx + (k as f64 * stride).round() as usize)
        .collect()
}

/// Cut the waveform samples covered by `w` out of `clip`.
pub fn extract_audio_segment(clip: &AVClip, w: &TimeWindow) -> Result<WaveformClip, SamplingError> {
    if w.start_s < -1e-9 || w.end_s() > clip.duration_s + 1e-9 {
        return Err(SamplingError::WindowOutOfRange {
            start: w.start_s,
            end: w.end_s(),
            duration_s: clip.duration_s,
        });
    }
    let sr = clip.waveform.sample_rate_hz;
    let start = (w.start_s * sr).round() as usize;
    let len = (w.duration_s * sr).round() as usize;
    let end = (start + len).min(clip.waveform.samples.len());
    let samples = clip.waveform.samples.slice(ndarray::s![start..end]).to_owned();
    Ok(WaveformClip {
        samples,
        sample_rate_hz: sr,
    })
}

/// Cut `round(duration * target_fps)` frames at uniform temporal stride from
/// the window. Upsampling (target above source fps) is rejected.
pub fn extract_video_segment(
    clip: &AVClip,
    w: &TimeWindow,
    target_fps: f64,
) -> Result<FrameSequence, SamplingError> {
    if target_fps > clip.video.fps + 1e-9 {
        return Err(SamplingError::UpsamplingRequest {
            source_fps: clip.video.fps,
            target_fps,
        });
    }
    if w.start_s < -1e-9 || w.end_s() > clip.duration_s + 1e-9 {
        return Err(SamplingError::WindowOutOfRange {
            start: w.start_s,
            end: w.end_s(),
            duration_s: clip.duration_s,
        });
    }
    let n_out = (w.duration_s * target_fps).round() as usize;
    let total = clip.video.len();
    let indices: Vec<usize> = video_frame_indices(w.start_s, clip.video.fps, n_out, target_fps)
        .into_iter()
        .map(|i| i.min(total - 1))
        .collect();
    let mut frames = ndarray::Array4::zeros((
        indices.len(),
        clip.video.frames.dim().1,
        clip.video.frames.dim().2,
        3,
    ));
    for (ti, &src) in indices.iter().enumerate() {
        frames
            .index_axis_mut(ndarray::Axis(0), ti)
            .assign(&clip.video.frames.index_axis(ndarray::Axis(0), src));
    }
    Ok(FrameSequence {
        frames,
        fps: target_fps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use ndarray::{Array1, Array4};

    fn spec(strategy: SamplingStrategy) -> SamplerSpec {
        SamplerSpec {
            strategy,
            audio_win_s: 2.0,
            video_win_s: 0.5,
        }
    }

    #[test]
    fn overlapped_shift_is_half_window() {
        let mut rng = stream(1, &[0]);
        for _ in 0..100 {
            let (t1, t2) =
                sample_view_timestamps(&spec(SamplingStrategy::Overlapped), 10.0, &mut rng)
                    .unwrap();
            assert!((t2 - t1 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn same_strategy_has_zero_gap() {
        let mut rng = stream(2, &[0]);
        let (t1, t2) =
            sample_view_timestamps(&spec(SamplingStrategy::Same), 2.0, &mut rng).unwrap();
        assert_eq!(t1, t2);
    }

    #[test]
    fn far_apart_windows_stay_in_their_halves() {
        let mut rng = stream(3, &[0]);
        let (mut min_t1, mut max_t1) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut min_t2, mut max_t2) = (f64::INFINITY, f64::NEG_INFINITY);
        for _ in 0..10_000 {
            let (t1, t2) =
                sample_view_timestamps(&spec(SamplingStrategy::FarApart), 10.0, &mut rng)
                    .unwrap();
            min_t1 = min_t1.min(t1);
            max_t1 = max_t1.max(t1);
            min_t2 = min_t2.min(t2);
            max_t2 = max_t2.max(t2);
        }
        assert!(min_t1 >= 0.0 && max_t1 <= 3.0, "t1 range [{min_t1}, {max_t1}]");
        assert!(min_t2 >= 5.0 && max_t2 <= 8.0, "t2 range [{min_t2}, {max_t2}]");
    }

    #[test]
    fn infeasible_clip_names_strategy_and_minimum() {
        let mut rng = stream(4, &[0]);
        let err = sample_view_timestamps(&spec(SamplingStrategy::FarApart), 3.0, &mut rng)
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("far_apart") && msg.contains("4.000"), "{msg}");
    }

    #[test]
    fn modality_windows_center_video() {
        let (a, v) = modality_windows(1.0, &spec(SamplingStrategy::Same));
        assert!((a.start_s - 1.0).abs() < 1e-12 && (a.end_s() - 3.0).abs() < 1e-12);
        assert!((v.start_s - 1.75).abs() < 1e-12 && (v.end_s() - 2.25).abs() < 1e-12);
    }

    #[test]
    fn equal_windows_when_video_matches_audio() {
        let s = SamplerSpec {
            strategy: SamplingStrategy::Same,
            audio_win_s: 2.0,
            video_win_s: 2.0,
        };
        let (a, v) = modality_windows(0.5, &s);
        assert_eq!(a, v);
    }

    #[test]
    fn video_window_nonnegative_at_origin() {
        let (_, v) = modality_windows(0.0, &spec(SamplingStrategy::Same));
        assert!((v.start_s - 0.75).abs() < 1e-12);
    }

    #[test]
    fn determinism_same_seed_same_timestamps() {
        let draw = || {
            let mut rng = stream(9, &[7]);
            sample_view_timestamps(&spec(SamplingStrategy::Random), 8.0, &mut rng).unwrap()
        };
        assert_eq!(draw(), draw());
    }

    fn test_clip(duration_s: f64, sr: f64, fps: f64) -> AVClip {
        let n = (duration_s * sr) as usize;
        let t = (duration_s * fps) as usize;
        // Encode the frame index in the red channel so slices are checkable.
        let mut frames = Array4::zeros((t, 8, 8, 3));
        for ti in 0..t {
            frames
                .index_axis_mut(ndarray::Axis(0), ti)
                .slice_mut(ndarray::s![.., .., 0])
                .fill((ti % 250) as f64 / 255.0);
        }
        AVClip::new(
            WaveformClip::new(Array1::linspace(0.0, 0.9, n), sr).unwrap(),
            FrameSequence::new(frames, fps).unwrap(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn audio_segment_index_arithmetic() {
        let clip = test_clip(4.0, 16_000.0, 16.0);
        let w = TimeWindow::new(1.0, 2.0).unwrap();
        let seg = extract_audio_segment(&clip, &w).unwrap();
        assert_eq!(seg.samples.len(), 32_000);
        assert_eq!(seg.samples[0], clip.waveform.samples[16_000]);
    }

    #[test]
    fn audio_full_clip_is_identity_slice() {
        let clip = test_clip(2.0, 8_000.0, 16.0);
        let w = TimeWindow::new(0.0, 2.0).unwrap();
        let seg = extract_audio_segment(&clip, &w).unwrap();
        assert_eq!(seg.samples, clip.waveform.samples);
    }

    #[test]
    fn audio_window_beyond_end_errors() {
        let clip = test_clip(2.0, 8_000.0, 16.0);
        let w = TimeWindow::new(1.0, 2.0).unwrap();
        assert!(extract_audio_segment(&clip, &w).is_err());
    }

    #[test]
    fn video_segment_strides_32_to_16_fps() {
        let clip = test_clip(2.0, 16_000.0, 32.0);
        let w = TimeWindow::new(0.0, 0.5).unwrap();
        let seg = extract_video_segment(&clip, &w, 16.0).unwrap();
        assert_eq!(seg.len(), 8);
        for (k, frame) in seg.frames.outer_iter().enumerate() {
            let expect = ((2 * k) % 250) as f64 / 255.0;
            assert!((frame[[0, 0, 0]] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn video_segment_same_fps_contiguous() {
        let clip = test_clip(2.0, 16_000.0, 16.0);
        let w = TimeWindow::new(0.5, 0.5).unwrap();
        let seg = extract_video_segment(&clip, &w, 16.0).unwrap();
        assert_eq!(seg.len(), 8);
        assert!((seg.frames[[0, 0, 0, 0]] - 8.0 / 255.0).abs() < 1e-12);
        assert!((seg.frames[[7, 0, 0, 0]] - 15.0 / 255.0).abs() < 1e-12);
    }

    #[test]
    fn one_second_at_16fps_gives_16_frames() {
        let clip = test_clip(2.0, 16_000.0, 32.0);
        let w = TimeWindow::new(0.0, 1.0).unwrap();
        let seg = extract_video_segment(&clip, &w, 16.0).unwrap();
        assert_eq!(seg.len(), 16);
    }

    #[test]
    fn video_upsampling_rejected() {
        let clip = test_clip(2.0, 16_000.0, 16.0);
        let w = TimeWindow::new(0.0, 0.5).unwrap();
        assert!(matches!(
            extract_video_segment(&clip, &w, 32.0),
            Err(SamplingError::UpsamplingRequest { .. })
        ));
    }
}
