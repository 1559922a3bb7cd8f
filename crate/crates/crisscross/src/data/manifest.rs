//! JSON-lines dataset manifest: one entry per line, paths relative to the
//! manifest file's directory.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::DataError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

/// One dataset clip: media paths are stored relative to the manifest file.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ManifestEntry {
    pub clip_id: String,
    pub audio_path: String,
    pub video_path: String,
    pub duration_s: f64,
    #[serde(default)]
    pub label: Option<u32>,
    pub split: Split,
}

#[derive(Debug, Clone, Default)]
pub struct DatasetManifest {
    pub entries: Vec<ManifestEntry>,
    /// Directory the relative media paths are resolved against.
    pub root: PathBuf,
}

impl DatasetManifest {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn audio_path(&self, e: &ManifestEntry) -> PathBuf {
        self.root.join(&e.audio_path)
    }

    pub fn video_path(&self, e: &ManifestEntry) -> PathBuf {
        self.root.join(&e.video_path)
    }

    pub fn split_entries(&self, split: Split) -> Vec<&ManifestEntry> {
        self.entries.iter().filter(|e| e.split == split).collect()
    }
}

/// Load and validate a JSON-lines manifest.
///
/// Returns the manifest together with any non-fatal warnings (for example an
/// empty file). Errors carry the offending line number.
pub fn load_manifest(path: &Path) -> Result<(DatasetManifest, Vec<String>), DataError> {
    let text =
        fs::read_to_string(path).map_err(|e| DataError::io(path.display().to_string(), e))?;
    let root = path
        .parent()
        .map(|p| p.to_path_buf())
        .unwrap_or_else(|| PathBuf::from("."));
    let mut warnings = Vec::new();
    let mut entries = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let entry: ManifestEntry =
            serde_json::from_str(line).map_err(|e| DataError::MalformedLine {
                line: line_no,
                msg: e.to_string(),
            })?;
        if !(entry.duration_s > 0.0) {
            return Err(DataError::MalformedLine {
                line: line_no,
                msg: format!("duration_s must be > 0, got {}", entry.duration_s),
            });
        }
        if let Some(first) = seen.insert(entry.clip_id.clone(), line_no) {
            return Err(DataError::DuplicateClipId {
                clip_id: entry.clip_id,
                first,
                second: line_no,
            });
        }
        for p in [&entry.audio_path, &entry.video_path] {
            let full = root.join(p);
            if !full.exists() {
                return Err(DataError::DanglingMediaPath {
                    line: line_no,
                    path: full.display().to_string(),
                });
            }
        }
        entries.push(entry);
    }
    if entries.is_empty() {
        warnings.push(format!("manifest {} contains no entries", path.display()));
    }
    Ok((DatasetManifest { entries, root }, warnings))
}

/// Write a manifest in its normalized JSON-lines form (stable field order,
/// `\n` separators). `load(write(m))` then `write` again is byte-identical.
pub fn write_manifest(path: &Path, manifest: &DatasetManifest) -> Result<(), DataError> {
    let mut out = String::new();
    for e in &manifest.entries {
        out.push_str(&serde_json::to_string(e).expect("manifest entry serializes"));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| DataError::io(path.display().to_string(), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn touch(dir: &Path, name: &str) {
        fs::write(dir.join(name), b"x").unwrap();
    }

    fn entry_line(id: &str, split: &str) -> String {
        format!(
            r#"{{"clip_id":"{id}","audio_path":"{id}.wav","video_path":"{id}.avcx","duration_s":4.0,"label":1,"split":"{split}"}}"#
        )
    }

    #[test]
    fn loads_well_formed_lines_in_order() {
        let dir = tempfile::tempdir().unwrap();
        for id in ["a", "b", "c"] {
            touch(dir.path(), &format!("{id}.wav"));
            touch(dir.path(), &format!("{id}.avcx"));
        }
        let p = dir.path().join("m.jsonl");
        let text = [
            entry_line("a", "train"),
            entry_line("b", "train"),
            entry_line("c", "test"),
        ]
        .join("\n");
        fs::write(&p, text).unwrap();
        let (m, warnings) = load_manifest(&p).unwrap();
        assert_eq!(m.len(), 3);
        assert!(warnings.is_empty());
        assert_eq!(m.entries[0].clip_id, "a");
        assert_eq!(m.entries[2].split, Split::Test);
    }

    #[test]
    fn empty_file_warns() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.jsonl");
        fs::write(&p, "").unwrap();
        let (m, warnings) = load_manifest(&p).unwrap();
        assert!(m.is_empty());
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn duplicate_clip_id_names_both_lines() {
        let dir = tempfile::tempdir().unwrap();
        touch(dir.path(), "a.wav");
        touch(dir.path(), "a.avcx");
        let p = dir.path().join("m.jsonl");
        let text = [entry_line("a", "train"), entry_line("a", "test")].join("\n");
        fs::write(&p, text).unwrap();
        let err = load_manifest(&p).unwrap_err();
        match err {
            DataError::DuplicateClipId {
                clip_id,
                first,
                second,
            } => {
                assert_eq!(clip_id, "a");
                assert_eq!((first, second), (1, 2));
            }
            other => panic!("expected duplicate error, got {other}"),
        }
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.jsonl");
        fs::write(&p, "{not json}\n").unwrap();
        let err = load_manifest(&p).unwrap_err();
        assert!(err.to_string().contains("line 1"));
    }

    #[test]
    fn dangling_media_path_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.jsonl");
        fs::write(&p, entry_line("a", "train")).unwrap();
        let err = load_manifest(&p).unwrap_err();
        assert!(matches!(err, DataError::DanglingMediaPath { line: 1, .. }));
    }

    #[test]
    fn write_load_write_round_trips_bytes() {
        let dir = tempfile::tempdir().unwrap();
        for id in ["a", "b"] {
            touch(dir.path(), &format!("{id}.wav"));
            touch(dir.path(), &format!("{id}.avcx"));
        }
        let p = dir.path().join("m.jsonl");
        let text = [entry_line("a", "train"), entry_line("b", "test")].join("\n") + "\n";
        fs::write(&p, &text).unwrap();
        let (m, _) = load_manifest(&p).unwrap();
        let p2 = dir.path().join("m2.jsonl");
        write_manifest(&p2, &m).unwrap();
        let normalized = fs::read(&p2).unwrap();
        // A second round trip of the normalized form is byte-identical.
        let (m2, _) = load_manifest(&p2).unwrap();
        let p3 = dir.path().join("m3.jsonl");
        write_manifest(&p3, &m2).unwrap();
        assert_eq!(normalized, fs::read(&p3).unwrap());
    }
}
