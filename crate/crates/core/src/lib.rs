//! Evaluation toolkit for end-to-end trajectory forecasting from raw
//! tracking output, where predicted tracks carry no identity
//! correspondence with the ground truth.
//!
//! The crate scores a predicted track set against a ground-truth track set
//! with three set-level metrics — expected forecast error (EFE, an
//! assignment-based time-averaged distance with a cardinality penalty),
//! OSPA-2, and IDF1 — and provides everything needed to run them
//! end-to-end: episode slicing over scenes ([`episodes`]), reference
//! forecasters ([`baselines`]), synthetic tracking degradation
//! ([`degrade`]), and canonical text file formats ([`io`]).
//!
//! Every computation is deterministic: randomized components take explicit
//! seeds, iteration orders are canonical, and optimal assignments are
//! canonicalized to the lexicographically smallest optimum, so equal
//! inputs produce equal outputs — bit for bit — across runs and platforms.

pub mod assignment;
pub mod baselines;
pub mod degrade;
pub mod episodes;
pub mod error;
pub mod io;
pub mod metrics;
pub mod types;

pub use assignment::{solve, Assignment, CostMatrix};
pub use baselines::{filter_min_observations, ForecastRequest, Forecaster};
pub use degrade::{degrade, DegradeParams};
pub use episodes::{
    aggregate_rows, build_report, enumerate_episodes, episode_metrics, evaluate,
    validate_predictions, Aggregate, AggregationMode, EpisodeMetrics, MetricReport,
    MetricSelection, PredictionMap, SceneData, REPORT_FORMAT_VERSION,
};
pub use error::{Error, Result};
pub use metrics::{
    efe, idf1, ospa2, ospa_base, state_distance, track_distance, EfeResult, IdCounts, Idf1Result,
    Ospa2Params,
};
pub use types::{
    domain_union, Episode, EvalConfig, Point2, TimeIndex, TimeWindow, Track, TrackRole, TrackSet,
};
