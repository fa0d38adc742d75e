use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use trajeval_core::episodes::{
    build_report, enumerate_episodes, episode_metrics, validate_predictions,
};
use trajeval_core::io::{
    load_gt_scenes, load_predictions, render_report, write_report, ReportFormat,
};
use trajeval_core::{AggregationMode, EvalConfig, MetricSelection};

#[derive(Args)]
pub struct EvaluateArgs {
    /// Directory of ground-truth scenes, one <scene_id>.txt per scene
    #[arg(long, value_name = "DIR")]
    gt: PathBuf,

    /// Directory of predictions: a manifest.json, or files named
    /// <scene_id>@<origin>.txt
    #[arg(long, value_name = "DIR")]
    pred: PathBuf,

    /// Comma-separated metrics to compute (efe, ospa2, idf1)
    #[arg(long, value_delimiter = ',', default_value = "efe,ospa2,idf1")]
    metrics: Vec<String>,

    /// Distance cutoff c in meters: per-step saturation and per-track
    /// cardinality penalty
    #[arg(long, default_value_t = EvalConfig::default().cutoff_c)]
    cutoff: f64,

    /// Future horizon length in frames
    #[arg(long, default_value_t = EvalConfig::default().horizon_frames)]
    horizon: u32,

    /// Observation window length in frames
    #[arg(long, default_value_t = EvalConfig::default().obs_frames)]
    obs: u32,

    /// Stride between forecast origins in frames
    #[arg(long, default_value_t = EvalConfig::default().stride_frames)]
    stride: u32,

    /// Distance threshold in meters for an IDF1 step match
    #[arg(long, default_value_t = EvalConfig::default().idf1_threshold)]
    idf1_threshold: f64,

    /// OSPA-2 order p
    #[arg(long = "ospa-p", default_value_t = EvalConfig::default().ospa_order_p)]
    ospa_p: f64,

    /// Average per scene first, then across scenes (default: pool all
    /// episodes)
    #[arg(long)]
    per_scene: bool,

    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Worker threads (default: one per logical CPU)
    #[arg(long, env = "TRAJEVAL_JOBS")]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Machine,
}

pub fn run(args: EvaluateArgs) -> anyhow::Result<()> {
    let cfg = EvalConfig {
        cutoff_c: args.cutoff,
        ospa_order_p: args.ospa_p,
        idf1_threshold: args.idf1_threshold,
        horizon_frames: args.horizon,
        obs_frames: args.obs,
        stride_frames: args.stride,
        ..EvalConfig::default()
    };
    cfg.validate()?;
    let selection = MetricSelection::from_names(&args.metrics)?;
    let mode = if args.per_scene {
        AggregationMode::PerScene
    } else {
        AggregationMode::Pooled
    };

    let scenes = load_gt_scenes(&args.gt).context("loading ground truth")?;
    let predictions = load_predictions(&args.pred).context("loading predictions")?;
    validate_predictions(&predictions, &scenes, &cfg)?;

    let work: Vec<_> = scenes
        .values()
        .flat_map(|scene| {
            enumerate_episodes(scene, &cfg)
                .into_iter()
                .map(move |episode| (scene, episode))
        })
        .collect();
    let rows = crate::jobs::with_pool(args.jobs, || {
        work.par_iter()
            .map(|(scene, episode)| {
                let prediction = predictions.get(&(scene.scene_id().to_string(), episode.origin()));
                episode_metrics(scene, episode, prediction, &cfg, selection)
            })
            .collect::<Vec<_>>()
    })?;
    let report = build_report(rows, &cfg, selection, mode);

    let format = match args.format {
        FormatArg::Table => ReportFormat::Table,
        FormatArg::Machine => ReportFormat::Machine,
    };
    match &args.out {
        Some(path) => write_report(&report, path, format)?,
        None => print!("{}", render_report(&report, format)),
    }
    Ok(())
}
