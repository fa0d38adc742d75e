//! Set-level evaluation metrics for trajectory forecasts.
//!
//! All three metrics compare a predicted track set against a ground-truth
//! track set over a time window without assuming any identity
//! correspondence between the two sides; correspondences are recovered by
//! min-cost assignment. They differ in what they charge for:
//!
//! * [`efe`] — asymmetric forecasting error in meters, saturating per-step
//!   displacement at a cutoff and charging the cutoff per unmatched track.
//! * [`ospa2`] — symmetric set distance in meters over the full window.
//! * [`idf1`] — identity-F1 percentage under a single global track pairing
//!   gated by a ground-plane distance threshold.

pub mod efe;
pub mod idf1;
pub mod ospa2;

pub use efe::{efe, state_distance, track_distance, EfeResult};
pub use idf1::{idf1, IdCounts, Idf1Result};
pub use ospa2::{ospa2, ospa_base, Ospa2Params};
