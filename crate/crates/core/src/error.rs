use std::path::PathBuf;

/// Errors produced by construction, parsing, and evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("track '{id}' has no states; a track needs at least one")]
    EmptyTrack { id: String },

    #[error("track '{id}' has two states at frame {frame}")]
    DuplicateState { id: String, frame: u64 },

    #[error("track '{id}' has a non-finite coordinate at frame {frame}")]
    NonFiniteCoordinate { id: String, frame: u64 },

    #[error("duplicate track id '{id}' within one track set")]
    DuplicateTrackId { id: String },

    #[error("invalid track id '{id}': {reason}")]
    InvalidTrackId { id: String, reason: String },

    #[error("invalid time window: start {start} is after end {end}")]
    InvalidWindow { start: u64, end: u64 },

    #[error("invalid episode: {0}")]
    InvalidEpisode(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid forecast request: {0}")]
    InvalidForecast(String),

    #[error(
        "cost matrix entry ({row}, {col}) is {value}; entries must be finite and non-negative"
    )]
    InvalidCost { row: usize, col: usize, value: f64 },

    #[error("cost matrix row {row} has {got} entries, expected {expected}")]
    RaggedCostMatrix {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("manifest {}: {message}", path.display())]
    Manifest { path: PathBuf, message: String },

    #[error("machine report: {0}")]
    ReportFormat(String),

    #[error("predictions reference unknown scene '{scene_id}'")]
    UnknownScene { scene_id: String },

    #[error("prediction for scene '{scene_id}' at origin {origin} does not correspond to any evaluation episode")]
    InvalidOrigin { scene_id: String, origin: u64 },

    #[error("i/o error at {}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
