//! End-to-end forecasting error: an asymmetric set distance between
//! predicted and ground-truth track sets.
//!
//! Per time step, displacement is saturated at a cutoff `c`; a missing
//! prediction where ground truth exists costs `c`, while a prediction with
//! no ground-truth counterpart costs nothing (late ground-truth entrants are
//! charged to the forecaster, early prediction endings are not). Track pairs
//! are scored by the time average of that step cost over the union of their
//! domains, tracks are matched by min-cost assignment, and every surplus
//! track on either side adds a cutoff-sized cardinality penalty.

use crate::assignment::{solve, CostMatrix};
use crate::types::{domain_union, Point2, Track, TrackSet};

/// Breakdown of one evaluation. `value` is in `[0, c]` and equals
/// `localization_term + cardinality_term` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct EfeResult {
    /// Overall error in meters.
    pub value: f64,
    /// `(prediction_id, ground_truth_id)` pairs chosen by the assignment.
    pub matched: Vec<(String, String)>,
    /// `|n - m|`, the difference in track counts.
    pub cardinality_gap: u64,
    /// Matched-pair distance total divided by `max(m, n)`.
    pub localization_term: f64,
    /// `c * cardinality_gap / max(m, n)`.
    pub cardinality_term: f64,
}

/// Per-step cost between an optional predicted state and an optional
/// ground-truth state. Asymmetric by design: a missing prediction against
/// existing ground truth costs the full cutoff, while a missing ground truth
/// costs nothing regardless of the prediction.
pub fn state_distance(pred: Option<Point2>, gt: Option<Point2>, cutoff: f64) -> f64 {
    debug_assert!(cutoff > 0.0);
    match (pred, gt) {
        (Some(p), Some(g)) => p.distance(&g).min(cutoff),
        (None, Some(_)) => cutoff,
        (_, None) => 0.0,
    }
}

/// Time-averaged [`state_distance`] over the union of the two tracks'
/// domains. Result is in `[0, cutoff]`.
pub fn track_distance(pred: &Track, gt: &Track, cutoff: f64) -> f64 {
    assert!(
        cutoff > 0.0 && cutoff.is_finite(),
        "cutoff must be a positive finite distance"
    );
    let union = domain_union(pred, gt);
    let sum: f64 = union
        .iter()
        .map(|&t| state_distance(pred.point_at(t), gt.point_at(t), cutoff))
        .sum();
    sum / union.len() as f64
}

/// Evaluates predictions against ground truth.
///
/// With `m` predicted and `n` ground-truth tracks, the value is
/// `(assignment total over track_distance + cutoff * |n - m|) / max(m, n)`.
/// Conventions: both sets empty → 0; exactly one empty → `cutoff` exactly.
/// Not symmetric in its arguments; see [`state_distance`].
pub fn efe(predictions: &TrackSet, ground_truth: &TrackSet, cutoff: f64) -> EfeResult {
    assert!(
        cutoff > 0.0 && cutoff.is_finite(),
        "cutoff must be a positive finite distance"
    );
    let m = predictions.len();
    let n = ground_truth.len();
    if m == 0 && n == 0 {
        return EfeResult {
            value: 0.0,
            matched: Vec::new(),
            cardinality_gap: 0,
            localization_term: 0.0,
            cardinality_term: 0.0,
        };
    }
    if m == 0 || n == 0 {
        return EfeResult {
            value: cutoff,
            matched: Vec::new(),
            cardinality_gap: m.max(n) as u64,
            localization_term: 0.0,
            cardinality_term: cutoff,
        };
    }

    let preds: Vec<&Track> = predictions.iter().collect();
    let gts: Vec<&Track> = ground_truth.iter().collect();
    let costs = CostMatrix::from_fn(m, n, |i, j| track_distance(preds[i], gts[j], cutoff))
        .expect("track distances are finite and non-negative");
    let assignment = solve(&costs);

    let denom = m.max(n) as f64;
    let gap = m.abs_diff(n) as u64;
    let localization_term = assignment.total_cost() / denom;
    let cardinality_term = cutoff * gap as f64 / denom;
    let matched = assignment
        .pairs()
        .iter()
        .map(|&(i, j)| (preds[i].id().to_string(), gts[j].id().to_string()))
        .collect();

    EfeResult {
        value: localization_term + cardinality_term,
        matched,
        cardinality_gap: gap,
        localization_term,
        cardinality_term,
    }
}
