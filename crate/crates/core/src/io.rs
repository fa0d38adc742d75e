//! Text formats: track files, prediction manifests, and metric reports.
//!
//! Track files are UTF-8, LF-terminated, comma-separated records of
//! `frame,track_id,x,y` with optional `#` comment lines. Writing is
//! canonical — rows sorted by `(frame, track_id)`, coordinates with six
//! decimal places, trailing newline — so equal track sets produce equal
//! bytes and `write ∘ parse ∘ write` is a byte-level fixed point. The
//! parser rejects malformed input instead of repairing it.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::episodes::{MetricReport, PredictionMap, SceneData, REPORT_FORMAT_VERSION};
use crate::error::{Error, Result};
use crate::types::{Point2, TimeIndex, Track, TrackRole, TrackSet};

/// Comment header written at the top of every track file.
pub const TRACK_FILE_HEADER: &str = "# frame,track_id,x,y";

/// File name that marks a directory of predictions as manifest-driven.
pub const MANIFEST_FILE_NAME: &str = "manifest.json";

/// Manifest schema version; bumped on any incompatible change.
pub const MANIFEST_FORMAT_VERSION: u32 = 1;

/// Six decimal places; negative zero is normalized so equal values always
/// print identically.
fn fmt_coord(value: f64) -> String {
    let s = format!("{value:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Renders a track set in canonical form.
pub fn tracks_to_string(set: &TrackSet) -> String {
    let mut rows: Vec<(u64, &str, Point2)> = set
        .iter()
        .flat_map(|track| track.points().map(move |(t, p)| (t.value(), track.id(), p)))
        .collect();
    rows.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    let mut out = String::with_capacity(rows.len() * 32 + TRACK_FILE_HEADER.len() + 1);
    out.push_str(TRACK_FILE_HEADER);
    out.push('\n');
    for (frame, id, p) in rows {
        out.push_str(&format!(
            "{frame},{id},{},{}\n",
            fmt_coord(p.x),
            fmt_coord(p.y)
        ));
    }
    out
}

pub fn write_tracks(set: &TrackSet, path: &Path) -> Result<()> {
    fs::write(path, tracks_to_string(set)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses track-file text. Errors cite the 1-based line number; `path` is
/// used only for error messages.
pub fn parse_tracks_str(content: &str, role: TrackRole, path: &Path) -> Result<TrackSet> {
    let err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut per_track: BTreeMap<&str, BTreeMap<u64, Point2>> = BTreeMap::new();
    for (idx, raw) in content.split('\n').enumerate() {
        let line = idx + 1;
        if raw.contains('\r') {
            return Err(err(
                line,
                "carriage return; LF line endings required".into(),
            ));
        }
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        if fields.len() != 4 {
            return Err(err(
                line,
                format!(
                    "expected 4 comma-separated fields (frame,track_id,x,y), found {}",
                    fields.len()
                ),
            ));
        }
        let frame: u64 = fields[0].parse().map_err(|_| {
            err(
                line,
                format!("frame '{}' is not an unsigned integer", fields[0]),
            )
        })?;
        let id = fields[1];
        if id.is_empty() || id.chars().any(|ch| ch.is_whitespace() || ch.is_control()) {
            return Err(err(line, format!("invalid track id '{id}'")));
        }
        let coord = |text: &str, axis: &str| -> Result<f64> {
            let v: f64 = text
                .parse()
                .map_err(|_| err(line, format!("{axis} '{text}' is not a number")))?;
            if !v.is_finite() {
                return Err(err(line, format!("{axis} '{text}' is not finite")));
            }
            Ok(v)
        };
        let x = coord(fields[2], "x")?;
        let y = coord(fields[3], "y")?;
        let states = per_track.entry(id).or_default();
        if states.insert(frame, Point2::new(x, y)).is_some() {
            return Err(err(
                line,
                format!("duplicate state for track '{id}' at frame {frame}"),
            ));
        }
    }
    let tracks: Vec<Track> = per_track
        .into_iter()
        .map(|(id, states)| {
            Track::new(id, states.into_iter().map(|(t, p)| (TimeIndex::new(t), p)))
                .expect("states validated line by line")
        })
        .collect();
    Ok(TrackSet::new(role, tracks).expect("grouping by id cannot produce duplicates"))
}

pub fn parse_tracks(path: &Path, role: TrackRole) -> Result<TrackSet> {
    let content = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_tracks_str(&content, role, path)
}

/// One prediction file in a manifest; `path` is relative to the manifest's
/// directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub scene_id: String,
    pub origin: TimeIndex,
    pub path: String,
}

/// Index of prediction files by `(scene_id, origin)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionManifest {
    pub format_version: u32,
    pub entries: Vec<ManifestEntry>,
}

impl PredictionManifest {
    /// Builds a manifest with entries in canonical `(scene_id, origin)` order.
    pub fn new(mut entries: Vec<ManifestEntry>) -> Self {
        entries
            .sort_by(|a, b| (a.scene_id.as_str(), a.origin).cmp(&(b.scene_id.as_str(), b.origin)));
        PredictionManifest {
            format_version: MANIFEST_FORMAT_VERSION,
            entries,
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let content = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let manifest: PredictionManifest =
            serde_json::from_str(&content).map_err(|e| Error::Manifest {
                path: path.to_path_buf(),
                message: e.to_string(),
            })?;
        if manifest.format_version != MANIFEST_FORMAT_VERSION {
            return Err(Error::Manifest {
                path: path.to_path_buf(),
                message: format!(
                    "unsupported format_version {} (supported: {MANIFEST_FORMAT_VERSION})",
                    manifest.format_version
                ),
            });
        }
        Ok(manifest)
    }
}

/// Canonical file name for one episode's predictions.
pub fn prediction_file_name(scene_id: &str, origin: TimeIndex) -> String {
    format!("{scene_id}@{}.txt", origin.value())
}

fn txt_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let io = |source| Error::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|ext| ext == "txt") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Loads every `*.txt` file in `dir` as one ground-truth scene whose id is
/// the file stem. Other files are ignored.
pub fn load_gt_scenes(dir: &Path) -> Result<BTreeMap<String, SceneData>> {
    let mut scenes = BTreeMap::new();
    for path in txt_files(dir)? {
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default()
            .to_string();
        let tracks = parse_tracks(&path, TrackRole::GroundTruth)?;
        scenes.insert(stem.clone(), SceneData::new(stem, tracks)?);
    }
    Ok(scenes)
}

/// Loads a prediction directory: via `manifest.json` when present, else via
/// the `<scene_id>@<origin>.txt` naming convention (every `*.txt` file must
/// conform). An empty directory yields an empty map.
pub fn load_predictions(dir: &Path) -> Result<PredictionMap> {
    let manifest_path = dir.join(MANIFEST_FILE_NAME);
    let mut map = PredictionMap::new();
    if manifest_path.is_file() {
        let manifest = PredictionManifest::load(&manifest_path)?;
        for entry in &manifest.entries {
            let set = parse_tracks(&dir.join(&entry.path), TrackRole::Prediction)?;
            if map
                .insert((entry.scene_id.clone(), entry.origin), set)
                .is_some()
            {
                return Err(Error::Manifest {
                    path: manifest_path.clone(),
                    message: format!(
                        "duplicate entry for scene '{}' at origin {}",
                        entry.scene_id, entry.origin
                    ),
                });
            }
        }
    } else {
        for path in txt_files(dir)? {
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or_default();
            let key = stem.rsplit_once('@').and_then(|(scene, origin)| {
                if scene.is_empty() {
                    return None;
                }
                let origin: u64 = origin.parse().ok()?;
                Some((scene.to_string(), TimeIndex::new(origin)))
            });
            let Some(key) = key else {
                return Err(Error::Manifest {
                    path: path.clone(),
                    message:
                        "prediction file name must follow '<scene_id>@<origin>.txt' (or list the \
                         file in a manifest.json)"
                            .into(),
                });
            };
            let set = parse_tracks(&path, TrackRole::Prediction)?;
            map.insert(key, set);
        }
    }
    Ok(map)
}

/// Output style for metric reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// Aligned human-readable summary.
    Table,
    /// JSON document with per-episode rows; round-trips via
    /// [`parse_machine_report`].
    Machine,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "machine" => Ok(ReportFormat::Machine),
            other => Err(Error::InvalidConfig(format!(
                "unknown report format '{other}' (expected table or machine)"
            ))),
        }
    }
}

fn fmt_metric(value: Option<f64>, decimals: usize) -> String {
    value.map_or_else(|| "-".to_string(), |v| format!("{v:.decimals$}"))
}

fn render_table(report: &MetricReport) -> String {
    let cfg = &report.config;
    let agg = &report.aggregate;
    let mode = match report.aggregation {
        crate::episodes::AggregationMode::Pooled => "pooled",
        crate::episodes::AggregationMode::PerScene => "per-scene",
    };
    let mut out = String::new();
    out.push_str(&format!("episodes evaluated: {}\n", agg.episode_count));
    out.push_str(&format!("aggregation: {mode}\n"));
    out.push_str(&format!(
        "config: cutoff_c={} ospa_order_p={} idf1_threshold={} horizon={} obs={} stride={}\n\n",
        cfg.cutoff_c,
        cfg.ospa_order_p,
        cfg.idf1_threshold,
        cfg.horizon_frames,
        cfg.obs_frames,
        cfg.stride_frames
    ));
    let mut rows: Vec<(&str, String)> = Vec::new();
    if report.metrics.efe {
        rows.push(("EFE ↓", fmt_metric(agg.efe_mean, 6)));
    }
    if report.metrics.ospa2 {
        rows.push(("OSPA-2 ↓", fmt_metric(agg.ospa2_mean, 6)));
    }
    if report.metrics.idf1 {
        rows.push(("IDF1 ↑", fmt_metric(agg.idf1, 2)));
    }
    let width = rows
        .iter()
        .map(|(label, _)| label.chars().count())
        .max()
        .unwrap_or(0);
    for (label, value) in rows {
        out.push_str(&format!("{label:<width$}  {value}\n"));
    }
    out
}

pub fn render_report(report: &MetricReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Table => render_table(report),
        ReportFormat::Machine => {
            let mut text = serde_json::to_string_pretty(report).expect("report serializes");
            text.push('\n');
            text
        }
    }
}

pub fn write_report(report: &MetricReport, path: &Path, format: ReportFormat) -> Result<()> {
    fs::write(path, render_report(report, format)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses a machine-format report, rejecting unknown schema versions.
pub fn parse_machine_report(content: &str) -> Result<MetricReport> {
    let report: MetricReport =
        serde_json::from_str(content).map_err(|e| Error::ReportFormat(e.to_string()))?;
    if report.format_version != REPORT_FORMAT_VERSION {
        return Err(Error::ReportFormat(format!(
            "unsupported format_version {} (supported: {REPORT_FORMAT_VERSION})",
            report.format_version
        )));
    }
    Ok(report)
}
