//! Trajectory data model shared by all metrics, forecasters, and I/O.
//!
//! Positions are 2D ground-plane coordinates in meters, in a scene-fixed
//! frame. Time is a discrete frame index; the seconds-per-frame conversion
//! lives only in [`EvalConfig::frame_period`]. Track ids are opaque labels
//! used for bookkeeping and never for metric matching.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Discrete frame index. Unitless; see [`EvalConfig::frame_period`] for the
/// real-time interpretation.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct TimeIndex(u64);

impl TimeIndex {
    pub const fn new(value: u64) -> Self {
        TimeIndex(value)
    }

    pub const fn value(self) -> u64 {
        self.0
    }

    /// The index `frames` later. Panics on `u64` overflow.
    pub fn advance(self, frames: u64) -> TimeIndex {
        TimeIndex(self.0 + frames)
    }

    pub fn checked_sub(self, frames: u64) -> Option<TimeIndex> {
        self.0.checked_sub(frames).map(TimeIndex)
    }
}

impl fmt::Display for TimeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for TimeIndex {
    fn from(value: u64) -> Self {
        TimeIndex(value)
    }
}

/// Inclusive range of frame indices. Never empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeWindow {
    start: TimeIndex,
    end: TimeIndex,
}

impl TimeWindow {
    pub fn new(start: TimeIndex, end: TimeIndex) -> Result<Self> {
        if start > end {
            return Err(Error::InvalidWindow {
                start: start.value(),
                end: end.value(),
            });
        }
        Ok(TimeWindow { start, end })
    }

    pub fn start(&self) -> TimeIndex {
        self.start
    }

    pub fn end(&self) -> TimeIndex {
        self.end
    }

    /// Number of frames in the window (inclusive bounds).
    pub fn len(&self) -> u64 {
        self.end.value() - self.start.value() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, t: TimeIndex) -> bool {
        self.start <= t && t <= self.end
    }

    pub fn iter(&self) -> impl Iterator<Item = TimeIndex> {
        (self.start.value()..=self.end.value()).map(TimeIndex)
    }
}

/// Ground-plane position in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Euclidean distance. Uses `sqrt(dx² + dy²)` rather than `hypot` so the
    /// result is bit-identical across platforms.
    pub fn distance(&self, other: &Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// One agent's time-indexed sequence of positions.
///
/// Invariants, enforced at construction: at least one state, at most one
/// state per frame, and every coordinate finite. Duplicate frames are a
/// construction error rather than being silently merged, since duplicates
/// usually indicate an upstream tracker bug.
#[derive(Debug, Clone, PartialEq)]
pub struct Track {
    id: String,
    points: BTreeMap<TimeIndex, Point2>,
}

/// Track ids travel through the comma-separated text format, so they must
/// be non-empty and free of commas, whitespace, and control characters.
fn validate_track_id(id: &str) -> Result<()> {
    let reason = if id.is_empty() {
        "must not be empty"
    } else if id.contains(',') {
        "must not contain a comma"
    } else if id.chars().any(|ch| ch.is_whitespace() || ch.is_control()) {
        "must not contain whitespace or control characters"
    } else {
        return Ok(());
    };
    Err(Error::InvalidTrackId {
        id: id.to_string(),
        reason: reason.to_string(),
    })
}

impl Track {
    pub fn new(
        id: impl Into<String>,
        points: impl IntoIterator<Item = (TimeIndex, Point2)>,
    ) -> Result<Self> {
        let id = id.into();
        validate_track_id(&id)?;
        let mut map = BTreeMap::new();
        for (t, p) in points {
            if !p.is_finite() {
                return Err(Error::NonFiniteCoordinate {
                    id,
                    frame: t.value(),
                });
            }
            if map.insert(t, p).is_some() {
                return Err(Error::DuplicateState {
                    id,
                    frame: t.value(),
                });
            }
        }
        if map.is_empty() {
            return Err(Error::EmptyTrack { id });
        }
        Ok(Track { id, points: map })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// Number of states.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point_at(&self, t: TimeIndex) -> Option<Point2> {
        self.points.get(&t).copied()
    }

    /// Frames at which this track has a state, ascending.
    pub fn domain(&self) -> impl Iterator<Item = TimeIndex> + '_ {
        self.points.keys().copied()
    }

    /// States in ascending frame order.
    pub fn points(&self) -> impl Iterator<Item = (TimeIndex, Point2)> + '_ {
        self.points.iter().map(|(t, p)| (*t, *p))
    }

    pub fn first(&self) -> (TimeIndex, Point2) {
        let (t, p) = self.points.iter().next().expect("track is never empty");
        (*t, *p)
    }

    pub fn last(&self) -> (TimeIndex, Point2) {
        let (t, p) = self
            .points
            .iter()
            .next_back()
            .expect("track is never empty");
        (*t, *p)
    }

    /// The states falling inside `window`, as a track with the same id, or
    /// `None` when no state does. Idempotent: restricting twice with the same
    /// window equals restricting once.
    pub fn restrict(&self, window: TimeWindow) -> Option<Track> {
        let points: BTreeMap<TimeIndex, Point2> = self
            .points
            .range(window.start()..=window.end())
            .map(|(t, p)| (*t, *p))
            .collect();
        if points.is_empty() {
            None
        } else {
            Some(Track {
                id: self.id.clone(),
                points,
            })
        }
    }

    /// Same states under a different label.
    pub fn relabeled(&self, id: impl Into<String>) -> Result<Track> {
        let id = id.into();
        validate_track_id(&id)?;
        Ok(Track {
            id,
            points: self.points.clone(),
        })
    }
}

/// Sorted union of two tracks' time domains, without duplicates.
pub fn domain_union(a: &Track, b: &Track) -> Vec<TimeIndex> {
    let set: BTreeSet<TimeIndex> = a.domain().chain(b.domain()).collect();
    set.into_iter().collect()
}

/// Whether a track set holds forecaster output or ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrackRole {
    Prediction,
    GroundTruth,
}

impl fmt::Display for TrackRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrackRole::Prediction => write!(f, "prediction"),
            TrackRole::GroundTruth => write!(f, "ground_truth"),
        }
    }
}

/// Unordered collection of tracks for one scene or one episode.
///
/// Track ids are unique within a set; the empty set is a valid value. Tracks
/// are kept sorted by id so that iteration order is canonical everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackSet {
    role: TrackRole,
    tracks: Vec<Track>,
}

impl TrackSet {
    pub fn new(role: TrackRole, mut tracks: Vec<Track>) -> Result<Self> {
        tracks.sort_by(|a, b| a.id.cmp(&b.id));
        for pair in tracks.windows(2) {
            if pair[0].id == pair[1].id {
                return Err(Error::DuplicateTrackId {
                    id: pair[0].id.clone(),
                });
            }
        }
        Ok(TrackSet { role, tracks })
    }

    pub fn empty(role: TrackRole) -> Self {
        TrackSet {
            role,
            tracks: Vec::new(),
        }
    }

    pub fn role(&self) -> TrackRole {
        self.role
    }

    pub fn len(&self) -> usize {
        self.tracks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tracks.is_empty()
    }

    /// Tracks in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = &Track> {
        self.tracks.iter()
    }

    pub fn get(&self, id: &str) -> Option<&Track> {
        self.tracks
            .binary_search_by(|t| t.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.tracks[i])
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.get(id).is_some()
    }

    /// Restricts every track to `window`, dropping tracks that have no state
    /// inside it. The role tag is preserved.
    pub fn restrict(&self, window: TimeWindow) -> TrackSet {
        TrackSet {
            role: self.role,
            tracks: self
                .tracks
                .iter()
                .filter_map(|t| t.restrict(window))
                .collect(),
        }
    }

    /// Earliest and latest frame over all tracks, or `None` for the empty set.
    pub fn time_extent(&self) -> Option<TimeWindow> {
        let start = self.tracks.iter().map(|t| t.first().0).min()?;
        let end = self.tracks.iter().map(|t| t.last().0).max()?;
        Some(TimeWindow { start, end })
    }
}

/// One evaluation unit: an observation window ending at the forecast origin
/// plus the hidden future window immediately after it.
#[derive(Debug, Clone, PartialEq)]
pub struct Episode {
    scene_id: String,
    origin: TimeIndex,
    obs_window: TimeWindow,
    future_window: TimeWindow,
}

impl Episode {
    /// Builds the episode with observation window
    /// `[origin + 1 - obs_frames, origin]` and future window
    /// `[origin + 1, origin + horizon_frames]`.
    pub fn new(
        scene_id: impl Into<String>,
        origin: TimeIndex,
        obs_frames: u32,
        horizon_frames: u32,
    ) -> Result<Self> {
        if obs_frames == 0 {
            return Err(Error::InvalidEpisode(
                "observation window must span at least one frame".into(),
            ));
        }
        if horizon_frames == 0 {
            return Err(Error::InvalidEpisode(
                "future horizon must span at least one frame".into(),
            ));
        }
        let obs_start = origin
            .value()
            .checked_add(1)
            .and_then(|v| v.checked_sub(u64::from(obs_frames)))
            .ok_or_else(|| {
                Error::InvalidEpisode(format!(
                    "observation window of {obs_frames} frames does not fit before origin {origin}"
                ))
            })?;
        Ok(Episode {
            scene_id: scene_id.into(),
            origin,
            obs_window: TimeWindow {
                start: TimeIndex(obs_start),
                end: origin,
            },
            future_window: TimeWindow {
                start: origin.advance(1),
                end: origin.advance(u64::from(horizon_frames)),
            },
        })
    }

    pub fn scene_id(&self) -> &str {
        &self.scene_id
    }

    pub fn origin(&self) -> TimeIndex {
        self.origin
    }

    pub fn obs_window(&self) -> TimeWindow {
        self.obs_window
    }

    pub fn future_window(&self) -> TimeWindow {
        self.future_window
    }
}

/// Evaluation parameters shared by the metrics and the episode harness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    /// Saturation distance in meters: per-frame displacement is capped here,
    /// and each unmatched track costs this much.
    pub cutoff_c: f64,
    /// Order of the set-distance norm.
    pub ospa_order_p: f64,
    /// Ground-plane association radius in meters for identity matching.
    pub idf1_threshold: f64,
    /// Future window length in frames.
    pub horizon_frames: u32,
    /// Observation window length in frames.
    pub obs_frames: u32,
    /// Step between consecutive forecast origins.
    pub stride_frames: u32,
    /// Seconds per frame. Carried for reporting; all computation is
    /// frame-wise.
    pub frame_period: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            cutoff_c: 5.0,
            ospa_order_p: 1.0,
            idf1_threshold: 1.0,
            horizon_frames: 5,
            obs_frames: 2,
            stride_frames: 1,
            frame_period: 1.0,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cutoff_c <= 0.0 || !self.cutoff_c.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "cutoff must be a positive finite distance, got {}",
                self.cutoff_c
            )));
        }
        if self.ospa_order_p < 1.0 || !self.ospa_order_p.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "set-distance order must be >= 1, got {}",
                self.ospa_order_p
            )));
        }
        if self.idf1_threshold <= 0.0 || !self.idf1_threshold.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "identity match threshold must be a positive finite distance, got {}",
                self.idf1_threshold
            )));
        }
        if self.horizon_frames == 0 {
            return Err(Error::InvalidConfig(
                "horizon must be at least one frame".into(),
            ));
        }
        if self.obs_frames < 2 {
            return Err(Error::InvalidConfig(
                "observation window must be at least two frames".into(),
            ));
        }
        if self.stride_frames == 0 {
            return Err(Error::InvalidConfig(
                "stride must be at least one frame".into(),
            ));
        }
        if self.frame_period <= 0.0 || !self.frame_period.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "frame period must be a positive finite duration, got {}",
                self.frame_period
            )));
        }
        Ok(())
    }
}
