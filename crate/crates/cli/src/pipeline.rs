//! One-shot ALEF -> IA -> PA -> blend run driven by a TOML file.
//!
//! ```toml
//! edges = "edges.tsv"
//! authors = "authors.tsv"      # optional
//! out = "final-scores.tsv"
//! alef_out = "alef.tsv"        # optional intermediate outputs
//! pa_out = "pa.tsv"
//!
//! [walk]
//! steps_between_teleports = 1
//! count_landing_arrival = true
//! dangling_policy = "halt"
//!
//! [blend]
//! alef_weight = 0.7            # author_weight defaults to 1 - alef_weight
//! randomize_unranked = false
//! ```
//!
//! The final file is byte-identical to running `rank --authors`, `authors`
//! and `blend` one after another with the same settings.

use std::io::Write;
use std::path::{Path, PathBuf};

use alef_core::scores::write_defined_scores;
use alef_core::{alef_rank, author_scores, blend_scores, AuthorScoreTable, BlendConfig, WalkConfig};
use anyhow::{bail, Context, Result};
use serde::Deserialize;

use crate::commands::{absolute, final_header, graph_header, load_corpus, pa_header, write_score_file};
use crate::Outcome;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PipelineConfig {
    edges: PathBuf,
    authors: Option<PathBuf>,
    out: PathBuf,
    alef_out: Option<PathBuf>,
    pa_out: Option<PathBuf>,
    #[serde(default)]
    strict: bool,
    #[serde(default)]
    walk: WalkConfig,
    #[serde(default)]
    blend: BlendSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct BlendSection {
    alef_weight: f64,
    author_weight: Option<f64>,
    randomize_unranked: bool,
    seed: Option<u64>,
}

impl Default for BlendSection {
    fn default() -> Self {
        BlendSection {
            alef_weight: 0.7,
            author_weight: None,
            randomize_unranked: false,
            seed: None,
        }
    }
}

pub fn run(config_path: &Path) -> Result<Outcome> {
    let text = std::fs::read_to_string(config_path)
        .with_context(|| format!("reading {}", config_path.display()))?;
    let config: PipelineConfig =
        toml::from_str(&text).with_context(|| format!("parsing {}", config_path.display()))?;
    let base = config_path.parent().unwrap_or(Path::new("."));
    let resolve = |p: &Path| absolute(base, p);

    if config.blend.randomize_unranked && config.blend.seed.is_none() {
        bail!("blend.randomize_unranked needs an explicit blend.seed");
    }
    let blend = BlendConfig {
        alef_weight: config.blend.alef_weight,
        author_weight: config
            .blend
            .author_weight
            .unwrap_or(1.0 - config.blend.alef_weight),
        randomize_unranked: config.blend.randomize_unranked,
        seed: config.blend.seed.unwrap_or_default(),
    };
    blend.validate()?;

    let edges = resolve(&config.edges);
    let authors = config.authors.as_deref().map(resolve);
    let (graph, authorship) = load_corpus(&edges, authors.as_deref(), config.strict)?;

    let alef = alef_rank(&graph, &config.walk)?;
    let table = match &authorship {
        Some(map) => author_scores(&alef, map)?,
        None => AuthorScoreTable::empty(graph.node_count()),
    };
    let final_scores = blend_scores(&alef, &table.pa, &blend)?;

    let mut outcome = Outcome {
        inputs: [Some(config_path.to_path_buf()), Some(edges), authors]
            .into_iter()
            .flatten()
            .collect(),
        outputs: Vec::new(),
    };

    let out = resolve(&config.out);
    write_score_file(&out, &final_header(&blend), graph.labels(), final_scores.as_slice())?;
    outcome.outputs.push(out);

    if let Some(path) = &config.alef_out {
        let path = resolve(path);
        let mut header = vec!["method: alef".to_string()];
        header.extend(config.walk.describe());
        header.extend(graph_header(&graph));
        header.push(format!("coverage: {}", alef.coverage()));
        write_score_file(&path, &header, graph.labels(), alef.as_slice())?;
        outcome.outputs.push(path);
    }
    if let Some(path) = &config.pa_out {
        let path = resolve(path);
        let file = std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        let mut out = std::io::BufWriter::new(file);
        let header = pa_header(table.pa_defined(), graph.node_count());
        write_defined_scores(&mut out, &header, graph.labels(), &table.pa)?;
        out.flush()?;
        outcome.outputs.push(path);
    }
    Ok(outcome)
}
