use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use trajeval_core::io::{load_gt_scenes, write_tracks};
use trajeval_core::{degrade, DegradeParams};

#[derive(Args)]
pub struct DegradeArgs {
    /// Directory of clean ground-truth scenes
    #[arg(long, value_name = "DIR")]
    gt: PathBuf,

    /// Probability of deleting each state
    #[arg(long, default_value_t = 0.0)]
    miss_rate: f64,

    /// Expected number of false tracks per scene (Poisson)
    #[arg(long, default_value_t = 0.0)]
    fp_rate: f64,

    /// Probability of splitting each track's identity once
    #[arg(long, default_value_t = 0.0)]
    id_switch_rate: f64,

    /// Standard deviation in meters of Gaussian position jitter
    #[arg(long, default_value_t = 0.0)]
    noise_sigma: f64,

    /// Longest lifespan in frames of an injected false track
    #[arg(long, default_value_t = 5)]
    fp_lifespan_max: u64,

    /// Base RNG seed; each scene derives its own stream from this and its id
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output directory for degraded scenes
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

/// FNV-1a over the scene id, xor'd with the base seed. Gives every scene
/// its own deterministic RNG stream while keeping results independent of
/// which other scenes are processed.
fn scene_seed(base: u64, scene_id: &str) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in scene_id.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash ^ base
}

pub fn run(args: DegradeArgs) -> anyhow::Result<()> {
    let params = DegradeParams {
        miss_rate: args.miss_rate,
        fp_rate: args.fp_rate,
        id_switch_rate: args.id_switch_rate,
        noise_sigma: args.noise_sigma,
        fp_lifespan_max: args.fp_lifespan_max,
        seed: 0,
    };
    params.validate()?;

    let scenes = load_gt_scenes(&args.gt).context("loading ground truth")?;
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    for (scene_id, scene) in &scenes {
        let scene_params = DegradeParams {
            seed: scene_seed(args.seed, scene_id),
            ..params
        };
        let degraded = degrade(scene.tracks(), &scene_params);
        write_tracks(&degraded, &args.out.join(format!("{scene_id}.txt")))?;
    }
    Ok(())
}
