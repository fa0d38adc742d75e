//! Identity-F1: how consistently predicted tracks can be identified with
//! ground-truth tracks over a window.
//!
//! One global track-to-track pairing is chosen for the whole window (never
//! re-matched per frame); a step counts as correctly identified when both
//! paired states exist within the distance threshold. The score is the
//! harmonic-mean F1 over identity true/false positives and negatives, as a
//! percentage.

use serde::{Deserialize, Serialize};

use crate::assignment::{solve, CostMatrix};
use crate::types::{TimeWindow, Track, TrackSet};

/// Identity detection counts over the window.
///
/// `idtp + idfn` equals the ground-truth state count in the window and
/// `idtp + idfp` the predicted state count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IdCounts {
    pub idtp: u64,
    pub idfp: u64,
    pub idfn: u64,
}

impl IdCounts {
    /// Sum of counts, used when pooling episodes.
    pub fn add(&self, other: &IdCounts) -> IdCounts {
        IdCounts {
            idtp: self.idtp + other.idtp,
            idfp: self.idfp + other.idfp,
            idfn: self.idfn + other.idfn,
        }
    }

    /// F1 percentage for these counts; 100 when there is nothing to detect
    /// and nothing was predicted.
    pub fn score(&self) -> f64 {
        let denom = 2 * self.idtp + self.idfp + self.idfn;
        if denom == 0 {
            100.0
        } else {
            100.0 * (2 * self.idtp) as f64 / denom as f64
        }
    }
}

/// Score plus the counts it was computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Idf1Result {
    /// Percentage in `[0, 100]`.
    pub score: f64,
    pub counts: IdCounts,
}

/// Number of window steps where both tracks have a state within `threshold`.
fn matched_steps(pred: &Track, gt: &Track, threshold: f64, window: TimeWindow) -> u64 {
    window
        .iter()
        .filter(|&t| match (pred.point_at(t), gt.point_at(t)) {
            (Some(p), Some(g)) => p.distance(&g) <= threshold,
            _ => false,
        })
        .count() as u64
}

/// Computes identity-F1 between the two sets restricted to `window`.
///
/// The global pairing minimizes the number of steps at which a pair fails
/// to match, which maximizes the total matched steps. Both sets empty on
/// the window → 100.0 with zero counts; empty predictions against `k`
/// ground-truth states → 0.0 with `idfn = k`.
pub fn idf1(
    predictions: &TrackSet,
    ground_truth: &TrackSet,
    threshold: f64,
    window: TimeWindow,
) -> Idf1Result {
    assert!(
        threshold > 0.0 && threshold.is_finite(),
        "identity match threshold must be a positive finite distance"
    );
    let preds = predictions.restrict(window);
    let gts = ground_truth.restrict(window);
    let pred_states: u64 = preds.iter().map(|t| t.len() as u64).sum();
    let gt_states: u64 = gts.iter().map(|t| t.len() as u64).sum();

    let idtp = if preds.is_empty() || gts.is_empty() {
        0
    } else {
        let pred_tracks: Vec<&Track> = preds.iter().collect();
        let gt_tracks: Vec<&Track> = gts.iter().collect();
        let matched: Vec<Vec<u64>> = pred_tracks
            .iter()
            .map(|p| {
                gt_tracks
                    .iter()
                    .map(|g| matched_steps(p, g, threshold, window))
                    .collect()
            })
            .collect();
        let window_len = window.len();
        let costs = CostMatrix::from_fn(pred_tracks.len(), gt_tracks.len(), |i, j| {
            (window_len - matched[i][j]) as f64
        })
        .expect("miss counts are finite and non-negative");
        solve(&costs)
            .pairs()
            .iter()
            .map(|&(i, j)| matched[i][j])
            .sum()
    };

    let counts = IdCounts {
        idtp,
        idfp: pred_states - idtp,
        idfn: gt_states - idtp,
    };
    Idf1Result {
        score: counts.score(),
        counts,
    }
}
