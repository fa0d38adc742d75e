//! Input builders shared by the benchmark targets. Inputs are seeded so
//! successive benchmark runs measure the same work.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use trajeval_core::{CostMatrix, Point2, TimeIndex, Track, TrackRole, TrackSet};

/// A dense cost matrix with entries uniform in `[0, 100)`.
pub fn random_cost_matrix(rows: usize, cols: usize, seed: u64) -> CostMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CostMatrix::from_fn(rows, cols, |_, _| rng.random_range(0.0..100.0))
        .expect("uniform entries are finite and non-negative")
}

/// A pair of track sets over frames `0..steps`: ground truth moves linearly
/// from random starting points, and the prediction side is the same motion
/// with a per-state perturbation, so metric costs are non-trivial.
pub fn perturbed_pair(tracks: usize, steps: u64, seed: u64) -> (TrackSet, TrackSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gt = Vec::with_capacity(tracks);
    let mut pred = Vec::with_capacity(tracks);
    for i in 0..tracks {
        let (x0, y0) = (rng.random_range(-50.0..50.0), rng.random_range(-50.0..50.0));
        let (vx, vy) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let exact: Vec<(TimeIndex, Point2)> = (0..steps)
            .map(|t| {
                (
                    TimeIndex::new(t),
                    Point2::new(x0 + vx * t as f64, y0 + vy * t as f64),
                )
            })
            .collect();
        let jittered: Vec<(TimeIndex, Point2)> = exact
            .iter()
            .map(|&(t, p)| {
                (
                    t,
                    Point2::new(
                        p.x + rng.random_range(-0.5..0.5),
                        p.y + rng.random_range(-0.5..0.5),
                    ),
                )
            })
            .collect();
        gt.push(Track::new(format!("g{i:03}"), exact).expect("valid synthetic track"));
        pred.push(Track::new(format!("p{i:03}"), jittered).expect("valid synthetic track"));
    }
    (
        TrackSet::new(TrackRole::Prediction, pred).expect("unique ids"),
        TrackSet::new(TrackRole::GroundTruth, gt).expect("unique ids"),
    )
}
