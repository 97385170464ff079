use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use alef_core::alef::{alef_monte_carlo_workers, PRNG_ALGORITHM};
use alef_core::corpus::{graph_stats, load_authorship, load_edges, LoadReport};
use alef_core::evaluate::load_judgments;
use alef_core::scores::{load_scores, write_defined_scores, write_scores, ScoreTable};
use alef_core::{
    alef_rank, author_scores, blend_scores, generate_corpus, generate_judgments, in_degree_rank,
    pairwise_performance, randomize_unranked, weight_sweep, AuthorshipMap, BlendConfig, CitationGraph,
    DanglingPolicy, NodeId, ScoreVector, Strictness, SynthConfig, WalkConfig,
};
use anyhow::{bail, Context, Result};
use indexmap::IndexSet;

use crate::{
    AuthorsArgs, BlendArgs, Dangling, EvalArgs, Method, Oracle, Outcome, RandomizeArgs, RankArgs, StatsArgs,
    SweepArgs, SynthArgs, WalkArgs,
};

pub fn strictness(strict: bool) -> Strictness {
    if strict {
        Strictness::Strict
    } else {
        Strictness::Lenient
    }
}

fn note_load(path: &Path, report: &LoadReport) {
    if report.malformed + report.self_loops + report.duplicates > 0 {
        eprintln!(
            "{}: skipped {} malformed line(s), dropped {} self-loop(s) and {} duplicate(s)",
            path.display(),
            report.malformed,
            report.self_loops,
            report.duplicates
        );
    }
}

pub fn load_corpus(
    edges: &Path,
    authors: Option<&Path>,
    strict: bool,
) -> Result<(CitationGraph, Option<AuthorshipMap>)> {
    let (mut graph, report) = load_edges(edges, strictness(strict))?;
    note_load(edges, &report);
    let authorship = match authors {
        Some(path) => {
            let (map, report) = load_authorship(path, &mut graph, strictness(strict))?;
            note_load(path, &report);
            Some(map)
        }
        None => None,
    };
    Ok((graph, authorship))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

pub fn write_score_file<'a>(
    path: &Path,
    header: &[String],
    labels: impl IntoIterator<Item = &'a str>,
    scores: &[f64],
) -> Result<()> {
    let mut out = create(path)?;
    write_scores(&mut out, header, labels, scores)?;
    out.flush()?;
    Ok(())
}

pub fn walk_config(args: &WalkArgs) -> WalkConfig {
    WalkConfig {
        steps_between_teleports: args.steps,
        count_landing_arrival: args.count_landing,
        dangling_policy: match args.dangling {
            Dangling::Halt => DanglingPolicy::Halt,
            Dangling::SelfArrival => DanglingPolicy::SelfArrival,
        },
        seed: args.seed.unwrap_or_default(),
        sample_count: args.samples,
    }
}

pub fn graph_header(graph: &CitationGraph) -> Vec<String> {
    vec![
        format!("nodes: {}", graph.node_count()),
        format!("edges: {}", graph.edge_count()),
    ]
}

pub fn rank(args: &RankArgs) -> Result<Outcome> {
    let (graph, _) = load_corpus(&args.edges, args.authors.as_deref(), args.strict)?;
    let walk = walk_config(&args.walk);
    let mut header = Vec::new();
    let scores = match args.method {
        Method::Alef => {
            header.push("method: alef".to_string());
            header.extend(walk.describe());
            alef_rank(&graph, &walk)?
        }
        Method::AlefMc => {
            if args.walk.seed.is_none() {
                bail!("--method alef-mc needs an explicit --seed");
            }
            header.push("method: alef-mc".to_string());
            header.extend(walk.describe());
            header.push(format!("samples: {}", walk.sample_count));
            header.push(format!("seed: {}", walk.seed));
            header.push(format!("workers: {}", args.workers));
            header.push(format!("prng: {PRNG_ALGORITHM}"));
            alef_monte_carlo_workers(&graph, &walk, args.workers)?
        }
        Method::Indegree => {
            header.push("method: indegree".to_string());
            in_degree_rank(&graph)
        }
    };
    header.extend(graph_header(&graph));
    let scores = if args.normalize {
        header.push("normalized: max".into());
        scores.max_normalized()
    } else {
        scores
    };
    header.push(format!("coverage: {}", scores.coverage()));
    write_score_file(&args.out, &header, graph.labels(), scores.as_slice())?;

    let mut outcome = Outcome {
        inputs: [Some(args.edges.clone()), args.authors.clone()].into_iter().flatten().collect(),
        outputs: vec![args.out.clone()],
    };
    if let Some(path) = &args.id_map {
        let mut out = create(path)?;
        graph.write_id_map(&mut out)?;
        out.flush()?;
        outcome.outputs.push(path.clone());
    }
    Ok(outcome)
}

pub fn pa_header(defined: usize, papers: usize) -> Vec<String> {
    vec![
        "kind: paper_author_score".into(),
        format!("papers: {papers}"),
        format!("defined: {defined}"),
    ]
}

pub fn authors(args: &AuthorsArgs) -> Result<Outcome> {
    let (graph, authorship) = load_corpus(&args.edges, Some(&args.authors), args.strict)?;
    let authorship = authorship.expect("authorship requested");
    let table = load_scores(&args.scores)?;
    let alef = table.align(&graph);
    let result = author_scores(&alef, &authorship)?;

    let mut out = create(&args.out)?;
    write_defined_scores(
        &mut out,
        &pa_header(result.pa_defined(), graph.node_count()),
        graph.labels(),
        &result.pa,
    )?;
    out.flush()?;

    let mut outcome = Outcome {
        inputs: vec![args.edges.clone(), args.authors.clone(), args.scores.clone()],
        outputs: vec![args.out.clone()],
    };
    if let Some(path) = &args.ia_out {
        let defined = result.ia.iter().filter(|v| v.is_some()).count();
        let header = vec![
            "kind: individual_author_score".into(),
            format!("authors: {}", authorship.author_count()),
            format!("defined: {defined}"),
        ];
        let labels = authorship.author_ids().map(|a| authorship.author_label(a));
        let mut out = create(path)?;
        write_defined_scores(&mut out, &header, labels, &result.ia)?;
        out.flush()?;
        outcome.outputs.push(path.clone());
    }
    Ok(outcome)
}

/// Scores from an ALEF file and an optional PA file over the union of their
/// ids (ALEF order first).
pub struct Combined {
    pub labels: IndexSet<String>,
    pub alef: ScoreVector,
    pub pa: Vec<Option<f64>>,
}

pub fn combine(alef: &ScoreTable, pa: Option<&ScoreTable>) -> Combined {
    let mut labels = alef.labels.clone();
    if let Some(pa) = pa {
        labels.extend(pa.labels.iter().cloned());
    }
    let alef_scores = labels.iter().map(|l| alef.get(l).unwrap_or(0.0)).collect();
    let pa_scores = labels
        .iter()
        .map(|l| pa.and_then(|t| t.get(l)))
        .collect();
    Combined {
        labels,
        alef: ScoreVector::new(alef_scores),
        pa: pa_scores,
    }
}

pub fn final_header(config: &BlendConfig) -> Vec<String> {
    let mut header = vec!["kind: final_score".to_string()];
    header.extend(config.describe());
    header
}

pub fn blend(args: &BlendArgs) -> Result<Outcome> {
    if args.randomize && args.seed.is_none() {
        bail!("--randomize needs an explicit --seed");
    }
    let alef = load_scores(&args.scores)?;
    let pa = args.pa.as_deref().map(load_scores).transpose()?;
    let combined = combine(&alef, pa.as_ref());
    let config = BlendConfig {
        alef_weight: args.alef_weight,
        author_weight: args.author_weight.unwrap_or(1.0 - args.alef_weight),
        randomize_unranked: args.randomize,
        seed: args.seed.unwrap_or_default(),
    };
    let scores = blend_scores(&combined.alef, &combined.pa, &config)?;
    write_score_file(&args.out, &final_header(&config), combined.labels.iter().map(String::as_str), scores.as_slice())?;
    Ok(Outcome {
        inputs: [Some(args.scores.clone()), args.pa.clone()].into_iter().flatten().collect(),
        outputs: vec![args.out.clone()],
    })
}

pub fn randomize(args: &RandomizeArgs) -> Result<Outcome> {
    let table = load_scores(&args.scores)?;
    let result = randomize_unranked(&table.as_vector(), args.seed);
    let mut header = vec!["kind: randomized".to_string(), format!("seed: {}", args.seed)];
    match result.ceiling {
        Some(ceiling) => {
            header.push(format!("ceiling: {ceiling:e}"));
            header.push(format!("filled: {}", result.filled));
        }
        None => eprintln!("warning: no paper has a positive score; scores left unchanged"),
    }
    let labels = table.labels.iter().map(String::as_str);
    write_score_file(&args.out, &header, labels, result.scores.as_slice())?;
    Ok(Outcome {
        inputs: vec![args.scores.clone()],
        outputs: vec![args.out.clone()],
    })
}

pub fn eval(args: &EvalArgs) -> Result<Outcome> {
    let table = load_scores(&args.scores)?;
    let resolve = |s: &str| table.labels.get_index_of(s).map(NodeId::new);
    let (judgments, _) = load_judgments(&args.judgments, resolve, strictness(args.strict))?;
    if judgments.excluded() > 0 {
        eprintln!("excluded {} judgment pair(s) with unknown or identical ids", judgments.excluded());
    }
    let report = pairwise_performance(&table.scores, &judgments)
        .with_context(|| format!("evaluating against {}", args.judgments.display()))?;
    let text = report.to_text();
    print!("{text}");

    let mut outcome = Outcome {
        inputs: vec![args.scores.clone(), args.judgments.clone()],
        outputs: Vec::new(),
    };
    if let Some(path) = &args.out {
        std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
        outcome.outputs.push(path.clone());
    }
    if let Some(path) = &args.json {
        std::fs::write(path, serde_json::to_string_pretty(&report)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        outcome.outputs.push(path.clone());
    }
    Ok(outcome)
}

pub fn parse_grid(text: &str) -> Result<Vec<(f64, f64)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (a, p) = pair
                .split_once(':')
                .with_context(|| format!("grid entry {pair:?} is not alef:author"))?;
            Ok((a.trim().parse()?, p.trim().parse()?))
        })
        .collect()
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome> {
    let alef = load_scores(&args.scores)?;
    let pa = args.pa.as_deref().map(load_scores).transpose()?;
    let combined = combine(&alef, pa.as_ref());
    let resolve = |s: &str| combined.labels.get_index_of(s).map(NodeId::new);
    let (judgments, _) = load_judgments(&args.judgments, resolve, Strictness::Lenient)?;
    let grid = parse_grid(&args.grid)?;
    let report = weight_sweep(&combined.alef, &combined.pa, &judgments, &grid)?;

    println!("alef_weight\tauthor_weight\tperformance\tcoverage");
    for e in &report.entries {
        println!(
            "{}\t{}\t{}\t{}",
            e.alef_weight, e.author_weight, e.report.performance, e.report.coverage
        );
    }
    let best = report.best_entry();
    println!("best: {}:{}", best.alef_weight, best.author_weight);

    let mut outcome = Outcome {
        inputs: [Some(args.scores.clone()), args.pa.clone(), Some(args.judgments.clone())]
            .into_iter()
            .flatten()
            .collect(),
        outputs: Vec::new(),
    };
    if let Some(path) = &args.out {
        std::fs::write(path, serde_json::to_string_pretty(&report)? + "\n")?;
        outcome.outputs.push(path.clone());
    }
    Ok(outcome)
}

pub fn synth(args: &SynthArgs) -> Result<Outcome> {
    let config = SynthConfig {
        paper_count: args.papers,
        mean_out_degree: args.mean_refs,
        preferential_exponent: args.exponent,
        author_count: args.author_count,
        mean_authors_per_paper: args.mean_authors,
        judgment_pair_count: args.pairs,
        seed: args.seed,
    };
    let (graph, authorship) = generate_corpus(&config)?;
    let oracle = match args.oracle {
        Oracle::Indegree => in_degree_rank(&graph),
        Oracle::Alef => alef_rank(&graph, &WalkConfig::default())?,
    };
    let judgments = generate_judgments(oracle.as_slice(), args.pairs, args.noise, args.seed)?;

    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    let edges_path = args.out_dir.join("edges.tsv");
    let authors_path = args.out_dir.join("authors.tsv");
    let judgments_path = args.out_dir.join("judgments.tsv");

    let mut out = create(&edges_path)?;
    graph.write_edges(&mut out)?;
    out.flush()?;
    let mut out = create(&authors_path)?;
    authorship.write(&graph, &mut out)?;
    out.flush()?;
    let mut out = create(&judgments_path)?;
    judgments.write(&mut out, |n| graph.label(n))?;
    out.flush()?;

    eprintln!(
        "wrote {} papers, {} citations, {} authorship records, {} judgments",
        graph.node_count(),
        graph.edge_count(),
        authorship.pair_count(),
        judgments.len()
    );
    Ok(Outcome {
        inputs: Vec::new(),
        outputs: vec![edges_path, authors_path, judgments_path],
    })
}

pub fn stats(args: &StatsArgs) -> Result<Outcome> {
    let (graph, authorship) = load_corpus(&args.edges, args.authors.as_deref(), args.strict)?;
    let stats = graph_stats(&graph);
    if args.json {
        let mut value = serde_json::to_value(&stats)?;
        if let Some(map) = &authorship {
            value["authors"] = map.author_count().into();
            value["authorship_pairs"] = map.pair_count().into();
        }
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("nodes: {}", stats.nodes);
        println!("edges: {}", stats.edges);
        println!("cited: {}", stats.cited);
        println!("citing: {}", stats.citing);
        println!("isolated: {}", stats.isolated);
        println!("dangling: {}", stats.dangling);
        if let Some(map) = &authorship {
            println!("authors: {}", map.author_count());
            println!("authorship_pairs: {}", map.pair_count());
        }
    }
    Ok(Outcome::default())
}

pub fn absolute(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}
