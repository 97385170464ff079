//! `alef`: rank papers in a citation graph from the command line.

mod commands;
mod manifest;
mod pipeline;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::manifest::{manifest_path, FileDigest, RunManifest};

#[derive(Debug, Parser)]
#[command(name = "alef", version, about = "Static ranking of papers in a citation graph")]
pub struct Cli {
    /// Worker threads for data-parallel steps; 1 defines the canonical output.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score every paper (ALEF, simulated ALEF or in-degree).
    Rank(RankArgs),
    /// Derive author (IA) and paper-author (PA) scores from paper scores.
    Authors(AuthorsArgs),
    /// Blend ALEF and PA scores into final scores.
    Blend(BlendArgs),
    /// Give unranked papers small random scores below every ranked paper.
    Randomize(RandomizeArgs),
    /// Evaluate scores against pairwise judgments.
    Eval(EvalArgs),
    /// Evaluate a grid of blend weights.
    Sweep(SweepArgs),
    /// Generate a synthetic corpus with judgments.
    Synth(SynthArgs),
    /// Print graph statistics.
    Stats(StatsArgs),
    /// Run rank, authors and blend from a TOML config.
    Pipeline(PipelineArgs),
    /// Re-run the command recorded in a manifest and check its outputs.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Alef,
    AlefMc,
    Indegree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dangling {
    Halt,
    #[value(name = "self")]
    SelfArrival,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    Indegree,
    Alef,
}

#[derive(Debug, Args, Serialize)]
pub struct WalkArgs {
    /// Directed steps between teleports (k).
    #[arg(long, default_value_t = 1)]
    pub steps: u32,
    /// Count the landing after each teleport as an arrival.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub count_landing: bool,
    #[arg(long, value_enum, default_value_t = Dangling::Halt)]
    pub dangling: Dangling,
    /// Monte Carlo walks.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct RankArgs {
    #[arg(long)]
    pub edges: PathBuf,
    /// Authorship file; its papers join the graph as isolated nodes.
    #[arg(long)]
    pub authors: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Alef)]
    pub method: Method,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub walk: WalkArgs,
    /// Independent Monte Carlo streams (alef-mc only).
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Divide scores by their maximum before writing.
    #[arg(long)]
    pub normalize: bool,
    /// Also write the string-id to node-id map.
    #[arg(long)]
    pub id_map: Option<PathBuf>,
    /// Fail on the first malformed line instead of skipping it.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct AuthorsArgs {
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long)]
    pub authors: PathBuf,
    /// ALEF scores.
    #[arg(long)]
    pub scores: PathBuf,
    /// PA output.
    #[arg(long)]
    pub out: PathBuf,
    /// IA output.
    #[arg(long)]
    pub ia_out: Option<PathBuf>,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct BlendArgs {
    /// ALEF scores.
    #[arg(long)]
    pub scores: PathBuf,
    /// PA scores; without it every paper keeps its ALEF score.
    #[arg(long)]
    pub pa: Option<PathBuf>,
    #[arg(long, default_value_t = 0.7)]
    pub alef_weight: f64,
    /// Defaults to 1 - alef weight.
    #[arg(long)]
    pub author_weight: Option<f64>,
    #[arg(long)]
    pub randomize: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct RandomizeArgs {
    #[arg(long)]
    pub scores: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct EvalArgs {
    #[arg(long)]
    pub scores: PathBuf,
    #[arg(long)]
    pub judgments: PathBuf,
    /// Write the key: value report here as well as to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write a JSON report.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub scores: PathBuf,
    #[arg(long)]
    pub pa: Option<PathBuf>,
    #[arg(long)]
    pub judgments: PathBuf,
    /// Comma-separated `alef:author` weight pairs.
    #[arg(long, default_value = "1:0,0.7:0.3,0.5:0.5,0.3:0.7,0:1")]
    pub grid: String,
    /// JSON report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 1000)]
    pub papers: usize,
    #[arg(long, default_value_t = 10.0)]
    pub mean_refs: f64,
    #[arg(long, default_value_t = 1.0)]
    pub exponent: f64,
    #[arg(long, default_value_t = 300)]
    pub author_count: usize,
    #[arg(long, default_value_t = 3.0)]
    pub mean_authors: f64,
    /// Judgment pairs.
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
    /// Probability of flipping each judgment.
    #[arg(long, default_value_t = 0.3)]
    pub noise: f64,
    #[arg(long, value_enum, default_value_t = Oracle::Indegree)]
    pub oracle: Oracle,
    #[arg(long)]
    pub seed: u64,
    /// Directory receiving edges.tsv, authors.tsv and judgments.tsv.
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct StatsArgs {
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long)]
    pub authors: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct PipelineArgs {
    /// TOML pipeline configuration.
    #[arg(long)]
    pub config: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct ReplayArgs {
    /// Manifest written next to an earlier output.
    #[arg(long)]
    pub manifest: PathBuf,
}

/// What a command read and wrote, for its manifest.
#[derive(Default)]
pub struct Outcome {
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
}

fn name_of(command: &Command) -> &'static str {
    match command {
        Command::Rank(_) => "rank",
        Command::Authors(_) => "authors",
        Command::Blend(_) => "blend",
        Command::Randomize(_) => "randomize",
        Command::Eval(_) => "eval",
        Command::Sweep(_) => "sweep",
        Command::Synth(_) => "synth",
        Command::Stats(_) => "stats",
        Command::Pipeline(_) => "pipeline",
        Command::Replay(_) => "replay",
    }
}

fn parameters_of(cli: &Cli) -> Result<serde_json::Value> {
    let value = match &cli.command {
        Command::Rank(a) => serde_json::to_value(a),
        Command::Authors(a) => serde_json::to_value(a),
        Command::Blend(a) => serde_json::to_value(a),
        Command::Randomize(a) => serde_json::to_value(a),
        Command::Eval(a) => serde_json::to_value(a),
        Command::Sweep(a) => serde_json::to_value(a),
        Command::Synth(a) => serde_json::to_value(a),
        Command::Stats(a) => serde_json::to_value(a),
        Command::Pipeline(a) => serde_json::to_value(a),
        Command::Replay(a) => serde_json::to_value(a),
    }?;
    Ok(value)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Rank(a) => commands::rank(a),
        Command::Authors(a) => commands::authors(a),
        Command::Blend(a) => commands::blend(a),
        Command::Randomize(a) => commands::randomize(a),
        Command::Eval(a) => commands::eval(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Synth(a) => commands::synth(a),
        Command::Stats(a) => commands::stats(a),
        Command::Pipeline(a) => pipeline::run(&a.config),
        Command::Replay(a) => replay(a),
    }
}

fn execute(args: Vec<String>) -> Result<()> {
    let cli = Cli::try_parse_from(std::iter::once("alef".to_string()).chain(args.iter().cloned()))?;
    if cli.threads == 0 {
        bail!("--threads must be at least 1");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .context("building thread pool")?;

    let started = Instant::now();
    let outcome = pool.install(|| dispatch(&cli))?;
    let duration_secs = started.elapsed().as_secs_f64();

    let Some(primary) = outcome.outputs.first() else {
        return Ok(());
    };
    let manifest = RunManifest {
        tool: "alef".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        subcommand: name_of(&cli.command).into(),
        args,
        cwd: std::env::current_dir()?,
        parameters: parameters_of(&cli)?,
        prng: alef_core::alef::PRNG_ALGORITHM.into(),
        threads: cli.threads,
        inputs: outcome
            .inputs
            .iter()
            .map(|p| FileDigest::of(p))
            .collect::<Result<_>>()?,
        outputs: outcome
            .outputs
            .iter()
            .map(|p| FileDigest::of(p))
            .collect::<Result<_>>()?,
        duration_secs,
    };
    manifest.save(&manifest_path(primary))
}

fn replay(args: &ReplayArgs) -> Result<Outcome> {
    let manifest = manifest::RunManifest::load(&args.manifest)?;
    std::env::set_current_dir(&manifest.cwd)
        .with_context(|| format!("entering {}", manifest.cwd.display()))?;
    for input in &manifest.inputs {
        let now = FileDigest::of(&input.path)?;
        if now.sha256 != input.sha256 {
            bail!("input {} changed since the manifest was written", input.path.display());
        }
    }
    execute(manifest.args.clone())?;
    let mut differing = Vec::new();
    for output in &manifest.outputs {
        if FileDigest::of(&output.path)?.sha256 != output.sha256 {
            differing.push(output.path.display().to_string());
        }
    }
    if !differing.is_empty() {
        bail!("replayed outputs differ: {}", differing.join(", "));
    }
    eprintln!("reproduced {} output file(s)", manifest.outputs.len());
    Ok(Outcome::default())
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match execute(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if let Some(clap_err) = err.downcast_ref::<clap::Error>() {
                let _ = clap_err.print();
                return ExitCode::from(clap_err.exit_code() as u8);
            }
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
