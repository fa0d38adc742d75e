//! Slices scenes into forecast episodes, evaluates each episode's future
//! window, and aggregates the results into a report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::efe::efe;
use crate::metrics::idf1::{idf1, IdCounts};
use crate::metrics::ospa2::{ospa2, Ospa2Params};
use crate::types::{Episode, EvalConfig, TimeIndex, TrackRole, TrackSet};

/// Machine-report schema version; bumped on any incompatible change.
pub const REPORT_FORMAT_VERSION: u32 = 1;

/// One scene's full ground-truth recording.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneData {
    scene_id: String,
    tracks: TrackSet,
}

impl SceneData {
    /// Scene ids become file stems, so path separators, whitespace, and
    /// control characters are rejected.
    pub fn new(scene_id: impl Into<String>, tracks: TrackSet) -> Result<Self> {
        let scene_id = scene_id.into();
        if scene_id.is_empty() {
            return Err(Error::InvalidConfig("scene id must not be empty".into()));
        }
        if scene_id
            .chars()
            .any(|ch| ch == '/' || ch == '\\' || ch.is_whitespace() || ch.is_control())
        {
            return Err(Error::InvalidConfig(format!(
                "scene id '{scene_id}' contains a path separator, whitespace, or control character"
            )));
        }
        Ok(SceneData { scene_id, tracks })
    }

    pub fn scene_id(&self) -> &str {
        &self.scene_id
    }

    pub fn tracks(&self) -> &TrackSet {
        &self.tracks
    }
}

/// Predicted track sets keyed by `(scene_id, forecast origin)`.
pub type PredictionMap = BTreeMap<(String, TimeIndex), TrackSet>;

/// Which metrics to compute. Selecting none is rejected by
/// [`MetricSelection::from_names`]; the default selects all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricSelection {
    pub efe: bool,
    pub ospa2: bool,
    pub idf1: bool,
}

impl Default for MetricSelection {
    fn default() -> Self {
        MetricSelection {
            efe: true,
            ospa2: true,
            idf1: true,
        }
    }
}

impl MetricSelection {
    pub fn from_names<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut selection = MetricSelection {
            efe: false,
            ospa2: false,
            idf1: false,
        };
        let mut any = false;
        for name in names {
            any = true;
            match name.as_ref() {
                "efe" => selection.efe = true,
                "ospa2" => selection.ospa2 = true,
                "idf1" => selection.idf1 = true,
                other => {
                    return Err(Error::InvalidConfig(format!(
                        "unknown metric '{other}' (expected efe, ospa2, or idf1)"
                    )))
                }
            }
        }
        if !any {
            return Err(Error::InvalidConfig(
                "at least one metric must be selected".into(),
            ));
        }
        Ok(selection)
    }
}

/// How per-episode values combine into the headline numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregationMode {
    /// Mean over all episodes pooled across scenes; IDF1 from summed counts.
    Pooled,
    /// Mean of per-scene means; IDF1 pooled within each scene first.
    PerScene,
}

/// Metric values for one episode. Unselected metrics are absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeMetrics {
    pub scene_id: String,
    pub origin: TimeIndex,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub efe: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ospa2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub idf1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub id_counts: Option<IdCounts>,
    /// `|n − m|` between the ground-truth and predicted future track sets.
    pub cardinality_gap: u64,
}

/// Headline numbers. Fields are absent when no episode carried the metric
/// (or there were no episodes at all).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub episode_count: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub efe_mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ospa2_mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub idf1: Option<f64>,
    /// Counts summed over all episodes, regardless of aggregation mode.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub id_counts: Option<IdCounts>,
}

/// Full evaluation output: configuration echo, canonical per-episode rows
/// (sorted by scene then origin), and the aggregate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub format_version: u32,
    pub config: EvalConfig,
    pub metrics: MetricSelection,
    pub aggregation: AggregationMode,
    pub aggregate: Aggregate,
    pub per_episode: Vec<EpisodeMetrics>,
}

/// Enumerates forecast origins for a scene: every origin stepped by
/// `stride_frames` whose observation and future windows both fit inside the
/// scene's time extent. Depends only on the extent, never on track content.
/// Too-short scenes yield an empty sequence. `cfg` must be valid.
pub fn enumerate_episodes(scene: &SceneData, cfg: &EvalConfig) -> Vec<Episode> {
    let Some(extent) = scene.tracks().time_extent() else {
        return Vec::new();
    };
    let first = extent.start().value() + u64::from(cfg.obs_frames) - 1;
    let Some(last) = extent
        .end()
        .value()
        .checked_sub(u64::from(cfg.horizon_frames))
    else {
        return Vec::new();
    };
    if first > last {
        return Vec::new();
    }
    (first..=last)
        .step_by(cfg.stride_frames as usize)
        .map(|t0| {
            Episode::new(
                scene.scene_id(),
                TimeIndex::new(t0),
                cfg.obs_frames,
                cfg.horizon_frames,
            )
            .expect("windows fit inside the extent by construction")
        })
        .collect()
}

/// Evaluates one episode. The ground truth and the prediction (when
/// present) are both restricted to the episode's future window; a missing
/// prediction counts as an empty set. `cfg` must be valid.
pub fn episode_metrics(
    scene: &SceneData,
    episode: &Episode,
    prediction: Option<&TrackSet>,
    cfg: &EvalConfig,
    selection: MetricSelection,
) -> EpisodeMetrics {
    let future = episode.future_window();
    let gt_future = scene.tracks().restrict(future);
    let pred_future = match prediction {
        Some(set) => set.restrict(future),
        None => TrackSet::empty(TrackRole::Prediction),
    };

    let efe_value = selection
        .efe
        .then(|| efe(&pred_future, &gt_future, cfg.cutoff_c).value);
    let ospa2_value = selection.ospa2.then(|| {
        let params = Ospa2Params::new(cfg.cutoff_c, cfg.ospa_order_p, future)
            .expect("validated config yields valid parameters");
        ospa2(&pred_future, &gt_future, &params)
    });
    let idf1_result = selection
        .idf1
        .then(|| idf1(&pred_future, &gt_future, cfg.idf1_threshold, future));

    EpisodeMetrics {
        scene_id: episode.scene_id().to_string(),
        origin: episode.origin(),
        efe: efe_value,
        ospa2: ospa2_value,
        idf1: idf1_result.as_ref().map(|r| r.score),
        id_counts: idf1_result.as_ref().map(|r| r.counts),
        cardinality_gap: pred_future.len().abs_diff(gt_future.len()) as u64,
    }
}

/// Checks that every prediction key names a known scene and an origin that
/// the episode enumeration actually produces.
pub fn validate_predictions(
    predictions: &PredictionMap,
    gt_scenes: &BTreeMap<String, SceneData>,
    cfg: &EvalConfig,
) -> Result<()> {
    let mut cached: Option<(&str, Vec<TimeIndex>)> = None;
    for (scene_id, origin) in predictions.keys() {
        let recompute = cached.as_ref().is_none_or(|(s, _)| *s != scene_id.as_str());
        if recompute {
            let scene = gt_scenes.get(scene_id).ok_or_else(|| Error::UnknownScene {
                scene_id: scene_id.clone(),
            })?;
            let origins = enumerate_episodes(scene, cfg)
                .iter()
                .map(Episode::origin)
                .collect();
            cached = Some((scene_id.as_str(), origins));
        }
        let (_, origins) = cached.as_ref().expect("just populated");
        if !origins.contains(origin) {
            return Err(Error::InvalidOrigin {
                scene_id: scene_id.clone(),
                origin: origin.value(),
            });
        }
    }
    Ok(())
}

fn mean_of(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (mut sum, mut n) = (0.0, 0u64);
    for v in values {
        sum += v;
        n += 1;
    }
    (n > 0).then(|| sum / n as f64)
}

/// Combines per-episode rows. Metric fields are `None` whenever no row
/// carries a value for them.
pub fn aggregate_rows(rows: &[EpisodeMetrics], mode: AggregationMode) -> Aggregate {
    let id_counts = rows
        .iter()
        .filter_map(|r| r.id_counts)
        .reduce(|a, b| a.add(&b));
    match mode {
        AggregationMode::Pooled => Aggregate {
            episode_count: rows.len() as u64,
            efe_mean: mean_of(rows.iter().filter_map(|r| r.efe)),
            ospa2_mean: mean_of(rows.iter().filter_map(|r| r.ospa2)),
            idf1: id_counts.map(|c| c.score()),
            id_counts,
        },
        AggregationMode::PerScene => {
            let mut scene_efe = Vec::new();
            let mut scene_ospa2 = Vec::new();
            let mut scene_idf1 = Vec::new();
            let mut i = 0;
            while i < rows.len() {
                let scene = &rows[i].scene_id;
                let end = rows[i..]
                    .iter()
                    .position(|r| &r.scene_id != scene)
                    .map_or(rows.len(), |p| i + p);
                let chunk = &rows[i..end];
                if let Some(m) = mean_of(chunk.iter().filter_map(|r| r.efe)) {
                    scene_efe.push(m);
                }
                if let Some(m) = mean_of(chunk.iter().filter_map(|r| r.ospa2)) {
                    scene_ospa2.push(m);
                }
                if let Some(c) = chunk
                    .iter()
                    .filter_map(|r| r.id_counts)
                    .reduce(|a, b| a.add(&b))
                {
                    scene_idf1.push(c.score());
                }
                i = end;
            }
            Aggregate {
                episode_count: rows.len() as u64,
                efe_mean: mean_of(scene_efe.into_iter()),
                ospa2_mean: mean_of(scene_ospa2.into_iter()),
                idf1: mean_of(scene_idf1.into_iter()),
                id_counts,
            }
        }
    }
}

/// Sorts rows canonically by `(scene_id, origin)` and assembles the report.
pub fn build_report(
    mut rows: Vec<EpisodeMetrics>,
    cfg: &EvalConfig,
    selection: MetricSelection,
    mode: AggregationMode,
) -> MetricReport {
    rows.sort_by(|a, b| (a.scene_id.as_str(), a.origin).cmp(&(b.scene_id.as_str(), b.origin)));
    let aggregate = aggregate_rows(&rows, mode);
    MetricReport {
        format_version: REPORT_FORMAT_VERSION,
        config: cfg.clone(),
        metrics: selection,
        aggregation: mode,
        aggregate,
        per_episode: rows,
    }
}

/// Evaluates every episode of every scene sequentially.
///
/// Episodes with no prediction entry are scored against the empty set. The
/// output is independent of the iteration order of either map.
pub fn evaluate(
    predictions: &PredictionMap,
    gt_scenes: &BTreeMap<String, SceneData>,
    cfg: &EvalConfig,
    selection: MetricSelection,
    mode: AggregationMode,
) -> Result<MetricReport> {
    cfg.validate()?;
    validate_predictions(predictions, gt_scenes, cfg)?;
    let mut rows = Vec::new();
    for (scene_id, scene) in gt_scenes {
        for episode in enumerate_episodes(scene, cfg) {
            let prediction = predictions.get(&(scene_id.clone(), episode.origin()));
            rows.push(episode_metrics(scene, &episode, prediction, cfg, selection));
        }
    }
    Ok(build_report(rows, cfg, selection, mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{Point2, Track};

    fn track(id: &str, states: &[(u64, f64, f64)]) -> Track {
        Track::new(
            id,
            states
                .iter()
                .map(|&(t, x, y)| (TimeIndex::new(t), Point2::new(x, y))),
        )
        .unwrap()
    }

    fn linear_track(id: &str, frames: std::ops::RangeInclusive<u64>, x0: f64, vx: f64) -> Track {
        Track::new(
            id,
            frames.map(|t| (TimeIndex::new(t), Point2::new(x0 + vx * t as f64, 0.0))),
        )
        .unwrap()
    }

    fn scene(id: &str, tracks: Vec<Track>) -> SceneData {
        SceneData::new(id, TrackSet::new(TrackRole::GroundTruth, tracks).unwrap()).unwrap()
    }

    fn origins(scene: &SceneData, cfg: &EvalConfig) -> Vec<u64> {
        enumerate_episodes(scene, cfg)
            .iter()
            .map(|e| e.origin().value())
            .collect()
    }

    #[test]
    fn enumeration_over_twenty_frames() {
        let s = scene("s", vec![linear_track("a", 0..=19, 0.0, 1.0)]);
        let cfg = EvalConfig::default();
        let got = origins(&s, &cfg);
        assert_eq!(got, (1..=14).collect::<Vec<u64>>());
    }

    #[test]
    fn enumeration_of_short_scene_is_empty() {
        let s = scene("s", vec![linear_track("a", 0..=6, 0.0, 1.0)]);
        let cfg = EvalConfig {
            horizon_frames: 10,
            ..EvalConfig::default()
        };
        assert!(origins(&s, &cfg).is_empty());
    }

    #[test]
    fn enumeration_with_huge_stride_gives_one_episode() {
        let s = scene("s", vec![linear_track("a", 0..=19, 0.0, 1.0)]);
        let cfg = EvalConfig {
            stride_frames: 100,
            ..EvalConfig::default()
        };
        assert_eq!(origins(&s, &cfg), vec![1]);
    }

    #[test]
    fn enumeration_depends_only_on_extent() {
        let dense = scene("s", vec![linear_track("a", 0..=19, 0.0, 1.0)]);
        let sparse = scene(
            "s",
            vec![
                track("a", &[(0, 0.0, 0.0), (3, 1.0, 0.0)]),
                track("b", &[(10, 5.0, 5.0), (19, 6.0, 5.0)]),
            ],
        );
        let cfg = EvalConfig::default();
        assert_eq!(origins(&dense, &cfg), origins(&sparse, &cfg));
    }

    fn perfect_predictions(s: &SceneData, cfg: &EvalConfig) -> PredictionMap {
        enumerate_episodes(s, cfg)
            .into_iter()
            .map(|ep| {
                (
                    (s.scene_id().to_string(), ep.origin()),
                    s.tracks().restrict(ep.future_window()),
                )
            })
            .collect()
    }

    #[test]
    fn perfect_predictions_score_perfectly() {
        let s = scene(
            "s",
            vec![
                linear_track("a", 0..=12, 0.0, 0.5),
                linear_track("b", 0..=12, 10.0, -0.25),
            ],
        );
        let cfg = EvalConfig::default();
        let preds = perfect_predictions(&s, &cfg);
        let scenes = BTreeMap::from([(s.scene_id().to_string(), s.clone())]);
        let report = evaluate(
            &preds,
            &scenes,
            &cfg,
            MetricSelection::default(),
            AggregationMode::Pooled,
        )
        .unwrap();
        assert_eq!(report.aggregate.episode_count, 7);
        assert_eq!(report.aggregate.efe_mean, Some(0.0));
        assert_eq!(report.aggregate.ospa2_mean, Some(0.0));
        assert_eq!(report.aggregate.idf1, Some(100.0));
        assert!(report.per_episode.iter().all(|r| r.cardinality_gap == 0));
    }

    #[test]
    fn missing_predictions_cost_the_cutoff() {
        let s = scene("s", vec![linear_track("a", 0..=10, 0.0, 1.0)]);
        let cfg = EvalConfig::default();
        let scenes = BTreeMap::from([("s".to_string(), s)]);
        let report = evaluate(
            &PredictionMap::new(),
            &scenes,
            &cfg,
            MetricSelection::default(),
            AggregationMode::Pooled,
        )
        .unwrap();
        assert!(report.aggregate.episode_count > 0);
        assert_eq!(report.aggregate.efe_mean, Some(5.0));
        assert_eq!(report.aggregate.ospa2_mean, Some(5.0));
        assert_eq!(report.aggregate.idf1, Some(0.0));
    }

    #[test]
    fn single_episode_cardinality_example() {
        // One prediction matching one of two ground-truth tracks exactly:
        // (0 + 5·1)/2 per episode.
        let s = scene(
            "s",
            vec![
                linear_track("g1", 0..=6, 0.0, 0.5),
                linear_track("g2", 0..=6, 100.0, 0.5),
            ],
        );
        let cfg = EvalConfig::default();
        let episodes = enumerate_episodes(&s, &cfg);
        assert_eq!(episodes.len(), 1);
        let future = episodes[0].future_window();
        let pred_track = s.tracks().get("g1").unwrap().restrict(future).unwrap();
        let preds: PredictionMap = BTreeMap::from([(
            ("s".to_string(), episodes[0].origin()),
            TrackSet::new(TrackRole::Prediction, vec![pred_track]).unwrap(),
        )]);
        let scenes = BTreeMap::from([("s".to_string(), s)]);
        let report = evaluate(
            &preds,
            &scenes,
            &cfg,
            MetricSelection::default(),
            AggregationMode::Pooled,
        )
        .unwrap();
        assert_eq!(report.aggregate.efe_mean, Some(2.5));
        assert_eq!(report.per_episode[0].cardinality_gap, 1);
    }

    #[test]
    fn identical_episodes_aggregate_to_the_episode_value() {
        // Static ground truth and a static prediction offset by 0.5 m make
        // every episode carry exactly the same values.
        let s = scene(
            "s",
            vec![track(
                "a",
                &(0..=12).map(|t| (t, 2.0, 2.0)).collect::<Vec<_>>(),
            )],
        );
        let cfg = EvalConfig::default();
        let preds: PredictionMap = enumerate_episodes(&s, &cfg)
            .into_iter()
            .map(|ep| {
                let states: Vec<(TimeIndex, Point2)> = ep
                    .future_window()
                    .iter()
                    .map(|t| (t, Point2::new(2.5, 2.0)))
                    .collect();
                (
                    ("s".to_string(), ep.origin()),
                    TrackSet::new(
                        TrackRole::Prediction,
                        vec![Track::new("a", states).unwrap()],
                    )
                    .unwrap(),
                )
            })
            .collect();
        let scenes = BTreeMap::from([("s".to_string(), s)]);
        let report = evaluate(
            &preds,
            &scenes,
            &cfg,
            MetricSelection::default(),
            AggregationMode::Pooled,
        )
        .unwrap();
        assert!(report.aggregate.episode_count > 1);
        assert_eq!(report.per_episode[0].efe, Some(0.5));
        assert_eq!(report.aggregate.efe_mean, Some(0.5));
    }

    #[test]
    fn per_scene_mode_averages_scene_means() {
        // Scene A: three episodes, no predictions → efe 5 each.
        // Scene B: three episodes, perfect predictions → efe 0 each.
        let a = scene("a", vec![linear_track("t", 0..=8, 0.0, 0.25)]);
        let b = scene("b", vec![linear_track("t", 0..=8, 0.0, 0.25)]);
        let cfg = EvalConfig::default();
        let preds = perfect_predictions(&b, &cfg);
        let scenes = BTreeMap::from([("a".to_string(), a), ("b".to_string(), b)]);
        let pooled = evaluate(
            &preds,
            &scenes,
            &cfg,
            MetricSelection::default(),
            AggregationMode::Pooled,
        )
        .unwrap();
        let per_scene = evaluate(
            &preds,
            &scenes,
            &cfg,
            MetricSelection::default(),
            AggregationMode::PerScene,
        )
        .unwrap();
        assert_eq!(pooled.aggregate.efe_mean, Some(2.5));
        assert_eq!(per_scene.aggregate.efe_mean, Some(2.5));
        // Make the scene sizes uneven: drop one of b's predictions so its
        // scene mean rises while the pooled mean rises differently.
        let mut partial = preds.clone();
        let removed = partial.keys().next().cloned().unwrap();
        partial.remove(&removed);
        let pooled = evaluate(
            &partial,
            &scenes,
            &cfg,
            MetricSelection::default(),
            AggregationMode::Pooled,
        )
        .unwrap();
        let per_scene = evaluate(
            &partial,
            &scenes,
            &cfg,
            MetricSelection::default(),
            AggregationMode::PerScene,
        )
        .unwrap();
        // Six episodes, four at 5.0 and two at 0.0 → pooled 20/6; scene
        // means 5.0 and 5/3 → per-scene 10/3.
        assert!((pooled.aggregate.efe_mean.unwrap() - 20.0 / 6.0).abs() < 1e-12);
        assert!((per_scene.aggregate.efe_mean.unwrap() - 10.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_scene_rejected() {
        let s = scene("s", vec![linear_track("a", 0..=10, 0.0, 1.0)]);
        let scenes = BTreeMap::from([("s".to_string(), s)]);
        let preds: PredictionMap = BTreeMap::from([(
            ("ghost".to_string(), TimeIndex::new(1)),
            TrackSet::empty(TrackRole::Prediction),
        )]);
        let err = evaluate(
            &preds,
            &scenes,
            &EvalConfig::default(),
            MetricSelection::default(),
            AggregationMode::Pooled,
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnknownScene { .. }));
    }

    #[test]
    fn off_grid_origin_rejected() {
        let s = scene("s", vec![linear_track("a", 0..=10, 0.0, 1.0)]);
        let scenes = BTreeMap::from([("s".to_string(), s)]);
        let preds: PredictionMap = BTreeMap::from([(
            ("s".to_string(), TimeIndex::new(100)),
            TrackSet::empty(TrackRole::Prediction),
        )]);
        let err = evaluate(
            &preds,
            &scenes,
            &EvalConfig::default(),
            MetricSelection::default(),
            AggregationMode::Pooled,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidOrigin { origin: 100, .. }));
    }

    #[test]
    fn zero_episodes_report_has_no_values() {
        let s = scene("s", vec![track("a", &[(0, 0.0, 0.0), (1, 1.0, 0.0)])]);
        let scenes = BTreeMap::from([("s".to_string(), s)]);
        let report = evaluate(
            &PredictionMap::new(),
            &scenes,
            &EvalConfig::default(),
            MetricSelection::default(),
            AggregationMode::Pooled,
        )
        .unwrap();
        assert_eq!(report.aggregate.episode_count, 0);
        assert_eq!(report.aggregate.efe_mean, None);
        assert_eq!(report.aggregate.ospa2_mean, None);
        assert_eq!(report.aggregate.idf1, None);
        assert_eq!(report.aggregate.id_counts, None);
        assert!(report.per_episode.is_empty());
    }

    #[test]
    fn metric_selection_limits_columns() {
        let s = scene("s", vec![linear_track("a", 0..=10, 0.0, 1.0)]);
        let scenes = BTreeMap::from([("s".to_string(), s)]);
        let selection = MetricSelection::from_names(["efe"]).unwrap();
        let report = evaluate(
            &PredictionMap::new(),
            &scenes,
            &EvalConfig::default(),
            selection,
            AggregationMode::Pooled,
        )
        .unwrap();
        assert!(report.aggregate.efe_mean.is_some());
        assert_eq!(report.aggregate.ospa2_mean, None);
        assert_eq!(report.aggregate.idf1, None);
        assert!(report
            .per_episode
            .iter()
            .all(|r| r.ospa2.is_none() && r.idf1.is_none()));
    }

    #[test]
    fn metric_selection_rejects_unknown_names() {
        assert!(MetricSelection::from_names(["efe", "mota"]).is_err());
        assert!(MetricSelection::from_names(Vec::<String>::new()).is_err());
    }

    #[test]
    fn scene_id_validation() {
        let tracks = TrackSet::empty(TrackRole::GroundTruth);
        assert!(SceneData::new("ok-scene_01", tracks.clone()).is_ok());
        assert!(SceneData::new("", tracks.clone()).is_err());
        assert!(SceneData::new("a/b", tracks.clone()).is_err());
        assert!(SceneData::new("a b", tracks).is_err());
    }

    #[test]
    fn prediction_states_outside_future_window_are_ignored() {
        let s = scene("s", vec![linear_track("a", 0..=6, 0.0, 0.5)]);
        let cfg = EvalConfig::default();
        let ep = enumerate_episodes(&s, &cfg).remove(0);
        // Prediction equals the gt future plus a bogus state at frame 0.
        let mut states: Vec<(TimeIndex, Point2)> = s
            .tracks()
            .get("a")
            .unwrap()
            .restrict(ep.future_window())
            .unwrap()
            .points()
            .collect();
        states.push((TimeIndex::new(0), Point2::new(999.0, 999.0)));
        let preds: PredictionMap = BTreeMap::from([(
            ("s".to_string(), ep.origin()),
            TrackSet::new(
                TrackRole::Prediction,
                vec![Track::new("a", states).unwrap()],
            )
            .unwrap(),
        )]);
        let scenes = BTreeMap::from([("s".to_string(), s)]);
        let report = evaluate(
            &preds,
            &scenes,
            &cfg,
            MetricSelection::default(),
            AggregationMode::Pooled,
        )
        .unwrap();
        assert_eq!(report.aggregate.efe_mean, Some(0.0));
        assert_eq!(report.aggregate.idf1, Some(100.0));
    }
}
