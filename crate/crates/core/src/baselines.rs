//! Reference forecasters: cheap models that turn observed tracks into
//! future-window predictions, for pipeline smoke tests and as floors that
//! learned models should beat.

use crate::error::{Error, Result};
use crate::types::{Point2, TimeIndex, Track, TrackRole, TrackSet};

/// Input to a forecaster: what was observed up to the origin, and how far
/// ahead to predict.
#[derive(Debug, Clone)]
pub struct ForecastRequest {
    observed: TrackSet,
    origin: TimeIndex,
    horizon: u32,
}

impl ForecastRequest {
    /// Validates that the horizon is at least one frame and every observed
    /// state lies at or before the origin.
    pub fn new(observed: TrackSet, origin: TimeIndex, horizon: u32) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidForecast(
                "horizon must be at least one frame".into(),
            ));
        }
        for track in observed.iter() {
            let (last, _) = track.last();
            if last > origin {
                return Err(Error::InvalidForecast(format!(
                    "track '{}' has a state at frame {last}, after the origin {origin}",
                    track.id()
                )));
            }
        }
        Ok(ForecastRequest {
            observed,
            origin,
            horizon,
        })
    }

    pub fn observed(&self) -> &TrackSet {
        &self.observed
    }

    pub fn origin(&self) -> TimeIndex {
        self.origin
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    fn future_frames(&self) -> impl Iterator<Item = TimeIndex> + '_ {
        (1..=u64::from(self.horizon)).map(|i| self.origin.advance(i))
    }
}

/// Available reference models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Forecaster {
    ZeroVelocity,
    ConstantVelocity,
}

impl Forecaster {
    pub fn forecast(&self, req: &ForecastRequest) -> TrackSet {
        match self {
            Forecaster::ZeroVelocity => zero_velocity(req),
            Forecaster::ConstantVelocity => constant_velocity(req),
        }
    }
}

/// Repeats each track's last observed position across the horizon. Track
/// ids are preserved; every output track covers exactly the horizon frames.
pub fn zero_velocity(req: &ForecastRequest) -> TrackSet {
    let tracks = req
        .observed
        .iter()
        .map(|track| {
            let (_, last) = track.last();
            Track::new(track.id(), req.future_frames().map(|t| (t, last)))
                .expect("horizon >= 1 and positions finite")
        })
        .collect();
    TrackSet::new(TrackRole::Prediction, tracks).expect("source ids are unique")
}

/// Extrapolates each track linearly from its last two observed states
/// (per-frame displacement = position difference divided by the frame gap).
/// Tracks with a single observed state fall back to repeating it.
pub fn constant_velocity(req: &ForecastRequest) -> TrackSet {
    let tracks = req
        .observed
        .iter()
        .map(|track| {
            let states: Vec<(TimeIndex, Point2)> = track.points().collect();
            let (t_last, p_last) = states[states.len() - 1];
            let velocity = if states.len() >= 2 {
                let (t_prev, p_prev) = states[states.len() - 2];
                let gap = (t_last.value() - t_prev.value()) as f64;
                Point2::new((p_last.x - p_prev.x) / gap, (p_last.y - p_prev.y) / gap)
            } else {
                Point2::new(0.0, 0.0)
            };
            Track::new(
                track.id(),
                req.future_frames().enumerate().map(|(i, t)| {
                    let step = (i + 1) as f64;
                    (
                        t,
                        Point2::new(p_last.x + velocity.x * step, p_last.y + velocity.y * step),
                    )
                }),
            )
            .expect("extrapolation of finite states at meter scale stays finite")
        })
        .collect();
    TrackSet::new(TrackRole::Prediction, tracks).expect("source ids are unique")
}

/// Keeps only tracks with at least `min_obs` observed states — the strict
/// eligibility rule under which under-observed agents are not forecast at
/// all (and so count against cardinality instead).
pub fn filter_min_observations(set: &TrackSet, min_obs: usize) -> TrackSet {
    TrackSet::new(
        set.role(),
        set.iter().filter(|t| t.len() >= min_obs).cloned().collect(),
    )
    .expect("subset of a valid set is valid")
}
