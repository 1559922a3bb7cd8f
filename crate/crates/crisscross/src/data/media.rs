//! Raw media containers: WAV PCM-16 audio and a headered raw-RGB video block.
//!
//! Both formats are deliberately codec-free so that every byte written can be
//! read back bit-exactly. Video files start with the magic `AVCX`, a `u16`
//! version, the `T, H, W` extents and fps, followed by `T*H*W*3` bytes of
//! row-major 8-bit RGB.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use ndarray::{Array1, Array4};

use super::types::{AVClip, FrameSequence, WaveformClip};
use super::DataError;

pub const RAW_VIDEO_MAGIC: &[u8; 4] = b"AVCX";
pub const RAW_VIDEO_VERSION: u16 = 1;

/// A clip kept in its quantized storage form (PCM-16 audio, 8-bit RGB video).
/// Cheap to hold in memory for a whole dataset; decode on demand.
#[derive(Debug, Clone)]
pub struct StoredClip {
    pub samples: Vec<i16>,
    pub sample_rate_hz: f64,
    pub frames: Vec<u8>, // T*H*W*3 row-major
    pub t: usize,
    pub h: usize,
    pub w: usize,
    pub fps: f64,
    pub label: Option<u32>,
}

impl StoredClip {
    pub fn audio_duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }

    pub fn video_duration_s(&self) -> f64 {
        self.t as f64 / self.fps
    }

    pub fn duration_s(&self) -> f64 {
        self.audio_duration_s().min(self.video_duration_s())
    }

    /// Decode the full clip to its f64 value-type form.
    pub fn decode(&self) -> Result<AVClip, DataError> {
        let wav = self.decode_audio_range(0, self.samples.len());
        let vid = self.decode_video_frames(&(0..self.t).collect::<Vec<_>>(), self.fps)?;
        AVClip::new(wav, vid, self.label)
    }

    /// Decode samples `[start, start+len)` to f64, clamped to the clip.
    pub fn decode_audio_range(&self, start: usize, len: usize) -> WaveformClip {
        let end = (start + len).min(self.samples.len());
        let start = start.min(end);
        let vals: Vec<f64> = self.samples[start..end]
            .iter()
            .map(|&s| s as f64 / 32768.0)
            .collect();
        WaveformClip {
            samples: Array1::from(vals),
            sample_rate_hz: self.sample_rate_hz,
        }
    }

    /// Decode the given source-frame indices into a sequence at `fps`.
    pub fn decode_video_frames(
        &self,
        indices: &[usize],
        fps: f64,
    ) -> Result<FrameSequence, DataError> {
        let frame_len = self.h * self.w * 3;
        let mut out = Array4::<f64>::zeros((indices.len(), self.h, self.w, 3));
        for (ti, &src) in indices.iter().enumerate() {
            if src >= self.t {
                return Err(DataError::InvalidValue {
                    what: "frame index".into(),
                    msg: format!("{src} out of range 0..{}", self.t),
                });
            }
            let raw = &self.frames[src * frame_len..(src + 1) * frame_len];
            let mut slice = out.index_axis_mut(ndarray::Axis(0), ti);
            for (dst, &b) in slice.iter_mut().zip(raw.iter()) {
                *dst = b as f64 / 255.0;
            }
        }
        FrameSequence::new(out, fps)
    }
}

fn quantize_u8(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

fn quantize_i16(v: f64) -> i16 {
    (v.clamp(-1.0, 1.0) * 32767.0).round() as i16
}

/// Write a mono PCM-16 WAV file.
pub fn write_wav_pcm16(path: &Path, wave: &WaveformClip) -> Result<(), DataError> {
    let sr = wave.sample_rate_hz.round() as u32;
    let n = wave.samples.len() as u32;
    let data_len = n * 2;
    let mut buf: Vec<u8> = Vec::with_capacity(44 + data_len as usize);
    buf.extend_from_slice(b"RIFF");
    buf.write_u32::<LittleEndian>(36 + data_len).unwrap();
    buf.extend_from_slice(b"WAVE");
    buf.extend_from_slice(b"fmt ");
    buf.write_u32::<LittleEndian>(16).unwrap();
    buf.write_u16::<LittleEndian>(1).unwrap(); // PCM
    buf.write_u16::<LittleEndian>(1).unwrap(); // mono
    buf.write_u32::<LittleEndian>(sr).unwrap();
    buf.write_u32::<LittleEndian>(sr * 2).unwrap(); // byte rate
    buf.write_u16::<LittleEndian>(2).unwrap(); // block align
    buf.write_u16::<LittleEndian>(16).unwrap(); // bits per sample
    buf.extend_from_slice(b"data");
    buf.write_u32::<LittleEndian>(data_len).unwrap();
    for &v in wave.samples.iter() {
        buf.write_i16::<LittleEndian>(quantize_i16(v)).unwrap();
    }
    fs::write(path, &buf).map_err(|e| DataError::io(path.display().to_string(), e))
}

/// Read a mono PCM-16 WAV file into its quantized sample vector.
pub fn read_wav_pcm16(path: &Path) -> Result<(Vec<i16>, f64), DataError> {
    let bad = |msg: &str| DataError::BadContainer {
        path: path.display().to_string(),
        msg: msg.into(),
    };
    let mut f = fs::File::open(path).map_err(|e| DataError::io(path.display().to_string(), e))?;
    let mut header = [0u8; 12];
    f.read_exact(&mut header)
        .map_err(|e| DataError::io(path.display().to_string(), e))?;
    if &header[0..4] != b"RIFF" || &header[8..12] != b"WAVE" {
        return Err(bad("not a RIFF/WAVE file"));
    }
    let mut sample_rate = 0u32;
    let mut channels = 0u16;
    let mut bits = 0u16;
    let mut data: Option<Vec<u8>> = None;
    loop {
        let mut chunk_hdr = [0u8; 8];
        match f.read_exact(&mut chunk_hdr) {
            Ok(()) => {}
            Err(_) => break,
        }
        let id = &chunk_hdr[0..4];
        let size = u32::from_le_bytes(chunk_hdr[4..8].try_into().unwrap()) as usize;
        if id == b"fmt " {
            let mut fmt = vec![0u8; size];
            f.read_exact(&mut fmt)
                .map_err(|e| DataError::io(path.display().to_string(), e))?;
            let mut c = std::io::Cursor::new(&fmt);
            let audio_format = c.read_u16::<LittleEndian>().unwrap_or(0);
            channels = c.read_u16::<LittleEndian>().unwrap_or(0);
            sample_rate = c.read_u32::<LittleEndian>().unwrap_or(0);
            let _ = c.read_u32::<LittleEndian>();
            let _ = c.read_u16::<LittleEndian>();
            bits = c.read_u16::<LittleEndian>().unwrap_or(0);
            if audio_format != 1 {
                return Err(bad("only PCM format supported"));
            }
        } else if id == b"data" {
            let mut d = vec![0u8; size];
            f.read_exact(&mut d)
                .map_err(|e| DataError::io(path.display().to_string(), e))?;
            data = Some(d);
        } else {
            // skip unknown chunk (word aligned)
            let skip = size + (size & 1);
            let mut sink = vec![0u8; skip];
            f.read_exact(&mut sink)
                .map_err(|e| DataError::io(path.display().to_string(), e))?;
        }
    }
    if channels != 1 {
        return Err(bad(&format!("expected mono, got {channels} channels")));
    }
    if bits != 16 {
        return Err(bad(&format!("expected 16-bit samples, got {bits}")));
    }
    let data = data.ok_or_else(|| bad("missing data chunk"))?;
    let samples: Vec<i16> = data
        .chunks_exact(2)
        .map(|b| i16::from_le_bytes([b[0], b[1]]))
        .collect();
    Ok((samples, sample_rate as f64))
}

/// Write a frame sequence as the `AVCX` raw-RGB block container.
pub fn write_raw_video(path: &Path, video: &FrameSequence) -> Result<(), DataError> {
    let (t, h, w, _) = video.frames.dim();
    let mut buf: Vec<u8> = Vec::with_capacity(22 + t * h * w * 3);
    buf.extend_from_slice(RAW_VIDEO_MAGIC);
    buf.write_u16::<LittleEndian>(RAW_VIDEO_VERSION).unwrap();
    buf.write_u32::<LittleEndian>(t as u32).unwrap();
    buf.write_u32::<LittleEndian>(h as u32).unwrap();
    buf.write_u32::<LittleEndian>(w as u32).unwrap();
    buf.write_f32::<LittleEndian>(video.fps as f32).unwrap();
    // ndarray default layout is row-major, so iteration order is T,H,W,C.
    for &v in video.frames.iter() {
        buf.push(quantize_u8(v));
    }
    fs::write(path, &buf).map_err(|e| DataError::io(path.display().to_string(), e))
}

/// Read an `AVCX` container into its quantized byte form.
pub fn read_raw_video(path: &Path) -> Result<(Vec<u8>, usize, usize, usize, f64), DataError> {
    let bad = |msg: String| DataError::BadContainer {
        path: path.display().to_string(),
        msg,
    };
    let buf = fs::read(path).map_err(|e| DataError::io(path.display().to_string(), e))?;
    if buf.len() < 22 {
        return Err(bad(format!("truncated header ({} bytes)", buf.len())));
    }
    if &buf[0..4] != RAW_VIDEO_MAGIC {
        return Err(bad(format!(
            "bad magic at offset 0: expected AVCX, got {:?}",
            &buf[0..4]
        )));
    }
    let mut c = std::io::Cursor::new(&buf[4..22]);
    let version = c.read_u16::<LittleEndian>().unwrap();
    if version != RAW_VIDEO_VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }
    let t = c.read_u32::<LittleEndian>().unwrap() as usize;
    let h = c.read_u32::<LittleEndian>().unwrap() as usize;
    let w = c.read_u32::<LittleEndian>().unwrap() as usize;
    let fps = c.read_f32::<LittleEndian>().unwrap() as f64;
    let expect = t * h * w * 3;
    let payload = &buf[22..];
    if payload.len() != expect {
        return Err(bad(format!(
            "payload length {} does not match header {}x{}x{}x3 = {}",
            payload.len(),
            t,
            h,
            w,
            expect
        )));
    }
    Ok((payload.to_vec(), t, h, w, fps))
}

/// Load a manifest entry's media pair into a [`StoredClip`].
pub fn load_stored_clip(
    audio_path: &Path,
    video_path: &Path,
    label: Option<u32>,
) -> Result<StoredClip, DataError> {
    let (samples, sample_rate_hz) = read_wav_pcm16(audio_path)?;
    let (frames, t, h, w, fps) = read_raw_video(video_path)?;
    Ok(StoredClip {
        samples,
        sample_rate_hz,
        frames,
        t,
        h,
        w,
        fps,
        label,
    })
}

/// Encode an [`AVClip`] into its quantized storage form without touching disk.
pub fn store_clip(clip: &AVClip) -> StoredClip {
    let samples: Vec<i16> = clip.waveform.samples.iter().map(|&v| quantize_i16(v)).collect();
    let (t, h, w, _) = clip.video.frames.dim();
    let frames: Vec<u8> = clip.video.frames.iter().map(|&v| quantize_u8(v)).collect();
    StoredClip {
        samples,
        sample_rate_hz: clip.waveform.sample_rate_hz,
        frames,
        t,
        h,
        w,
        fps: clip.video.fps,
        label: clip.label,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array1;

    #[test]
    fn wav_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.wav");
        let vals: Vec<f64> = (0..100).map(|i| ((i as f64) * 0.37).sin() * 0.8).collect();
        let wave = WaveformClip::new(Array1::from(vals), 16_000.0).unwrap();
        write_wav_pcm16(&p, &wave).unwrap();
        let (samples, sr) = read_wav_pcm16(&p).unwrap();
        assert_eq!(sr, 16_000.0);
        let expect: Vec<i16> = wave.samples.iter().map(|&v| quantize_i16(v)).collect();
        assert_eq!(samples, expect);
    }

    #[test]
    fn raw_video_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("v.avcx");
        let mut frames = Array4::<f64>::zeros((3, 8, 10, 3));
        for (i, v) in frames.iter_mut().enumerate() {
            *v = (i % 256) as f64 / 255.0;
        }
        let video = FrameSequence::new(frames, 16.0).unwrap();
        write_raw_video(&p, &video).unwrap();
        let (bytes, t, h, w, fps) = read_raw_video(&p).unwrap();
        assert_eq!((t, h, w), (3, 8, 10));
        assert_eq!(fps, 16.0);
        let expect: Vec<u8> = video.frames.iter().map(|&v| quantize_u8(v)).collect();
        assert_eq!(bytes, expect);
    }

    #[test]
    fn corrupt_magic_names_offset() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.avcx");
        std::fs::write(&p, b"NOPExxxxxxxxxxxxxxxxxxxxxxxx").unwrap();
        let err = read_raw_video(&p).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("offset 0"), "unexpected error: {msg}");
    }
}
