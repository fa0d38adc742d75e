use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, ValueEnum};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use trajeval_core::io::write_tracks;
use trajeval_core::{Point2, TimeIndex, Track, TrackRole, TrackSet};

#[derive(Args)]
pub struct GenArgs {
    /// Motion pattern of the generated agents
    #[arg(long, value_enum)]
    scenario: Scenario,

    /// Number of agents
    #[arg(long, default_value_t = 3)]
    agents: u32,

    /// Number of frames (agents are present for all of them)
    #[arg(long, default_value_t = 20)]
    frames: u64,

    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Scene id; also the output file stem
    #[arg(long, default_value = "synthetic")]
    scene_id: String,

    /// Output directory for the scene file
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scenario {
    /// Agents stand still
    Static,
    /// Agents move with constant velocity
    Linear,
    /// Two orthogonal constant-velocity streams whose paths intersect
    Crossing,
}

/// All generated coordinates are multiples of 1/64 m. Those are exact in
/// both binary floating point and the 6-decimal file format, so constant-
/// velocity motion survives generation, writing, parsing, and exact linear
/// extrapolation without any rounding at all.
const GRID: f64 = 64.0;

fn dyadic(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> f64 {
    rng.random_range(lo..=hi) as f64 / GRID
}

/// Position of an agent with dyadic start `(x0, y0)` and velocity
/// `(vx, vy)` at frame `t`, computed exactly in integer 1/64 m units.
fn at(x0: f64, vx: f64, t: u64) -> f64 {
    let units = (x0 * GRID) as i64 + (vx * GRID) as i64 * t as i64;
    units as f64 / GRID
}

pub fn run(args: GenArgs) -> anyhow::Result<()> {
    anyhow::ensure!(args.frames >= 1, "--frames must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    // One agent per index, RNG drawn in index order: static draws (x, y);
    // linear draws (x0, y0, vx, vy); crossing draws one cross-offset.
    let mut tracks = Vec::with_capacity(args.agents as usize);
    for i in 0..args.agents {
        let (x0, y0, vx, vy) = match args.scenario {
            Scenario::Static => (
                dyadic(&mut rng, -512, 512),
                dyadic(&mut rng, -512, 512),
                0.0,
                0.0,
            ),
            Scenario::Linear => (
                dyadic(&mut rng, -512, 512),
                dyadic(&mut rng, -512, 512),
                dyadic(&mut rng, -32, 32),
                dyadic(&mut rng, -32, 32),
            ),
            Scenario::Crossing => {
                let offset = dyadic(&mut rng, -256, 256);
                if i % 2 == 0 {
                    (-8.0, offset, 0.5, 0.0)
                } else {
                    (offset, -8.0, 0.0, 0.5)
                }
            }
        };
        let states = (0..args.frames)
            .map(|t| (TimeIndex::new(t), Point2::new(at(x0, vx, t), at(y0, vy, t))));
        tracks.push(Track::new(format!("a{i:02}"), states).expect("generated states are valid"));
    }
    let set = TrackSet::new(TrackRole::GroundTruth, tracks).expect("generated ids are unique");
    // Validates that the scene id is usable as a file stem.
    let scene = trajeval_core::SceneData::new(&args.scene_id, set)?;

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    write_tracks(
        scene.tracks(),
        &args.out.join(format!("{}.txt", scene.scene_id())),
    )?;
    Ok(())
}
