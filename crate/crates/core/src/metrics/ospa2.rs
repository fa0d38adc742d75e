//! Symmetric set distance between two track sets over a fixed time window.
//!
//! The per-pair base distance averages a singleton set distance over every
//! step of the window (not just the steps where either track exists): both
//! states present → displacement capped at `c`; exactly one present → `c`;
//! both absent → 0. Set level, with `m ≤ n` after an order swap, the value
//! is `((assignment total over base^p + c^p·(n−m)) / n)^(1/p)` — a proper
//! symmetric distance, unlike the forecasting error metric.

use crate::assignment::{solve, CostMatrix};
use crate::error::{Error, Result};
use crate::types::{TimeWindow, Track, TrackSet};

/// Parameters: saturation distance `c`, norm order `p ≥ 1`, and the window
/// the distance is taken over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ospa2Params {
    cutoff_c: f64,
    order_p: f64,
    window: TimeWindow,
}

impl Ospa2Params {
    pub fn new(cutoff_c: f64, order_p: f64, window: TimeWindow) -> Result<Self> {
        if cutoff_c <= 0.0 || !cutoff_c.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "cutoff must be a positive finite distance, got {cutoff_c}"
            )));
        }
        if order_p < 1.0 || !order_p.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "set-distance order must be >= 1, got {order_p}"
            )));
        }
        Ok(Ospa2Params {
            cutoff_c,
            order_p,
            window,
        })
    }

    pub fn cutoff_c(&self) -> f64 {
        self.cutoff_c
    }

    pub fn order_p(&self) -> f64 {
        self.order_p
    }

    pub fn window(&self) -> TimeWindow {
        self.window
    }
}

/// Integer orders 1 and 2 are computed without `powf` so results are
/// bit-stable across platforms and libm versions.
fn pow_p(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x * x
    } else {
        x.powf(p)
    }
}

fn root_p(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x.sqrt()
    } else {
        x.powf(p.recip())
    }
}

/// Per-pair base distance: the singleton set distance averaged over every
/// step of the window. Symmetric in its two track arguments; in `[0, c]`.
pub fn ospa_base(a: &Track, b: &Track, params: &Ospa2Params) -> f64 {
    let c = params.cutoff_c;
    let sum: f64 = params
        .window
        .iter()
        .map(|t| match (a.point_at(t), b.point_at(t)) {
            (Some(p), Some(q)) => p.distance(&q).min(c),
            (None, None) => 0.0,
            _ => c,
        })
        .sum();
    sum / params.window.len() as f64
}

/// Set-level distance between two track sets over the window.
///
/// Conventions: both sets empty → 0; exactly one empty → `c` exactly.
/// Symmetric: `ospa2(a, b) == ospa2(b, a)` up to float summation order.
pub fn ospa2(a: &TrackSet, b: &TrackSet, params: &Ospa2Params) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return params.cutoff_c;
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let smalls: Vec<&Track> = small.iter().collect();
    let larges: Vec<&Track> = large.iter().collect();
    let (m, n) = (smalls.len(), larges.len());
    let p = params.order_p;

    let costs = CostMatrix::from_fn(m, n, |i, j| {
        pow_p(ospa_base(smalls[i], larges[j], params), p)
    })
    .expect("base distances are finite and non-negative");
    let total = solve(&costs).total_cost();
    let cardinality = pow_p(params.cutoff_c, p) * (n - m) as f64;
    root_p((total + cardinality) / n as f64, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{Point2, TimeIndex, TrackRole};

    fn track(id: &str, states: &[(u64, f64, f64)]) -> Track {
        Track::new(
            id,
            states
                .iter()
                .map(|&(t, x, y)| (TimeIndex::new(t), Point2::new(x, y))),
        )
        .unwrap()
    }

    fn set(tracks: Vec<Track>) -> TrackSet {
        TrackSet::new(TrackRole::GroundTruth, tracks).unwrap()
    }

    fn window(start: u64, end: u64) -> TimeWindow {
        TimeWindow::new(TimeIndex::new(start), TimeIndex::new(end)).unwrap()
    }

    fn params(c: f64, p: f64, w: TimeWindow) -> Ospa2Params {
        Ospa2Params::new(c, p, w).unwrap()
    }

    #[test]
    fn base_identical_tracks_is_zero() {
        let a = track("a", &[(1, 0.0, 0.0), (2, 1.0, 0.0), (3, 2.0, 0.0)]);
        let b = track("b", &[(1, 0.0, 0.0), (2, 1.0, 0.0), (3, 2.0, 0.0)]);
        assert_eq!(ospa_base(&a, &b, &params(5.0, 1.0, window(1, 3))), 0.0);
    }

    #[test]
    fn base_constant_separation() {
        let a = track("a", &[(1, 0.0, 0.0), (2, 1.0, 0.0), (3, 2.0, 0.0)]);
        let b = track("b", &[(1, 0.0, 1.0), (2, 1.0, 1.0), (3, 2.0, 1.0)]);
        let d = ospa_base(&a, &b, &params(5.0, 1.0, window(1, 3)));
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn base_partial_coverage() {
        // One track covers all 4 steps, the other 2 of them at matching
        // positions: (0 + 0 + 5 + 5) / 4.
        let a = track(
            "a",
            &[(1, 0.0, 0.0), (2, 1.0, 0.0), (3, 2.0, 0.0), (4, 3.0, 0.0)],
        );
        let b = track("b", &[(1, 0.0, 0.0), (2, 1.0, 0.0)]);
        let p = params(5.0, 1.0, window(1, 4));
        let d = ospa_base(&a, &b, &p);
        assert!((d - 2.5).abs() < 1e-12);
        assert_eq!(ospa_base(&a, &b, &p), ospa_base(&b, &a, &p));
    }

    #[test]
    fn set_identity_is_zero() {
        let s = set(vec![
            track("a", &[(1, 0.0, 0.0), (2, 1.0, 0.0)]),
            track("b", &[(1, 4.0, 4.0), (2, 4.0, 5.0)]),
        ]);
        assert_eq!(ospa2(&s, &s, &params(5.0, 1.0, window(1, 2))), 0.0);
    }

    #[test]
    fn set_one_empty_is_cutoff() {
        let s = set(vec![track("a", &[(1, 0.0, 0.0)])]);
        let empty = TrackSet::empty(TrackRole::Prediction);
        let p = params(5.0, 1.0, window(1, 2));
        assert_eq!(ospa2(&empty, &s, &p), 5.0);
        assert_eq!(ospa2(&s, &empty, &p), 5.0);
        assert_eq!(ospa2(&empty, &empty, &p), 0.0);
    }

    #[test]
    fn set_matched_pair_plus_unmatched_track() {
        // p = 1: one pair at base distance 1.0, one unmatched: (1 + 5) / 2.
        let a = set(vec![track("a", &[(1, 0.0, 0.0), (2, 1.0, 0.0)])]);
        let b = set(vec![
            track("x", &[(1, 0.0, 1.0), (2, 1.0, 1.0)]),
            track("y", &[(1, 40.0, 40.0), (2, 41.0, 40.0)]),
        ]);
        let p = params(5.0, 1.0, window(1, 2));
        let d = ospa2(&a, &b, &p);
        assert!((d - 3.0).abs() < 1e-12);
        assert!((ospa2(&b, &a, &p) - d).abs() < 1e-12);
    }

    #[test]
    fn higher_order_emphasizes_large_errors() {
        // Non-uniform per-pair distances: order 2 exceeds order 1.
        let a = set(vec![
            track("a", &[(1, 0.0, 0.0), (2, 0.0, 0.0)]),
            track("b", &[(1, 10.0, 0.0), (2, 10.0, 0.0)]),
        ]);
        let b = set(vec![
            track("x", &[(1, 0.0, 0.5), (2, 0.0, 0.5)]),
            track("y", &[(1, 10.0, 3.0), (2, 10.0, 3.0)]),
        ]);
        let w = window(1, 2);
        let d1 = ospa2(&a, &b, &params(5.0, 1.0, w));
        let d2 = ospa2(&a, &b, &params(5.0, 2.0, w));
        assert!(d2 > d1, "d2={d2} d1={d1}");
    }

    #[test]
    fn invalid_params_rejected() {
        let w = window(1, 2);
        assert!(Ospa2Params::new(0.0, 1.0, w).is_err());
        assert!(Ospa2Params::new(5.0, 0.5, w).is_err());
        assert!(Ospa2Params::new(f64::NAN, 1.0, w).is_err());
    }
}
