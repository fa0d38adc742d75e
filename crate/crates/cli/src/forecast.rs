use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use trajeval_core::episodes::enumerate_episodes;
use trajeval_core::io::{
    prediction_file_name, tracks_to_string, ManifestEntry, PredictionManifest, MANIFEST_FILE_NAME,
};
use trajeval_core::{filter_min_observations, EvalConfig, ForecastRequest, Forecaster};

#[derive(Args)]
pub struct ForecastArgs {
    /// Directory of observed track scenes, one <scene_id>.txt per scene
    #[arg(long, value_name = "DIR")]
    obs: PathBuf,

    /// Reference forecaster
    #[arg(long, value_enum)]
    model: ModelArg,

    /// Future horizon length in frames
    #[arg(long, default_value_t = EvalConfig::default().horizon_frames)]
    horizon: u32,

    /// Minimum observed states within the observation window for a track
    /// to receive a forecast
    #[arg(long, default_value_t = 1)]
    min_obs: usize,

    /// Observation window length in frames
    #[arg(long, default_value_t = EvalConfig::default().obs_frames)]
    obs_frames: u32,

    /// Stride between forecast origins in frames
    #[arg(long, default_value_t = EvalConfig::default().stride_frames)]
    stride: u32,

    /// Output directory for prediction files and their manifest.json
    #[arg(long, value_name = "DIR")]
    out: PathBuf,

    /// Worker threads (default: one per logical CPU)
    #[arg(long, env = "TRAJEVAL_JOBS")]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    ZeroVelocity,
    ConstVelocity,
}

pub fn run(args: ForecastArgs) -> anyhow::Result<()> {
    let cfg = EvalConfig {
        horizon_frames: args.horizon,
        obs_frames: args.obs_frames,
        stride_frames: args.stride,
        ..EvalConfig::default()
    };
    cfg.validate()?;
    let model = match args.model {
        ModelArg::ZeroVelocity => Forecaster::ZeroVelocity,
        ModelArg::ConstVelocity => Forecaster::ConstantVelocity,
    };

    let scenes = trajeval_core::io::load_gt_scenes(&args.obs).context("loading observations")?;
    let work: Vec<_> = scenes
        .values()
        .flat_map(|scene| {
            enumerate_episodes(scene, &cfg)
                .into_iter()
                .map(move |episode| (scene, episode))
        })
        .collect();
    let files = crate::jobs::with_pool(args.jobs, || {
        work.par_iter()
            .map(|(scene, episode)| {
                let observed = scene.tracks().restrict(episode.obs_window());
                let eligible = filter_min_observations(&observed, args.min_obs);
                let request = ForecastRequest::new(eligible, episode.origin(), args.horizon)
                    .expect("observation window ends at the origin");
                let prediction = model.forecast(&request);
                (
                    ManifestEntry {
                        scene_id: scene.scene_id().to_string(),
                        origin: episode.origin(),
                        path: prediction_file_name(scene.scene_id(), episode.origin()),
                    },
                    tracks_to_string(&prediction),
                )
            })
            .collect::<Vec<_>>()
    })?;

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let mut entries = Vec::with_capacity(files.len());
    for (entry, content) in files {
        let path = args.out.join(&entry.path);
        fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
        entries.push(entry);
    }
    PredictionManifest::new(entries).save(&args.out.join(MANIFEST_FILE_NAME))?;
    Ok(())
}
