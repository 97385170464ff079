use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn alef(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alef"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("spawn alef")
}

fn ok(args: &[&str], cwd: &Path) -> String {
    let out = alef(args, cwd);
    assert!(
        out.status.success(),
        "alef {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn triangle(dir: &Path) -> PathBuf {
    let p = dir.join("e.tsv");
    std::fs::write(&p, "A\tB\nC\tB\nC\tA\n").unwrap();
    p
}

/// (id, score) pairs from a score file, headers skipped.
fn read_scores(path: &Path) -> Vec<(String, f64)> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| {
            let (id, s) = l.split_once('\t').unwrap();
            (id.to_string(), s.parse().unwrap())
        })
        .collect()
}

fn assert_scores(path: &Path, expected: &[(&str, f64)]) {
    let got = read_scores(path);
    assert_eq!(got.len(), expected.len());
    for ((id, s), (eid, es)) in got.iter().zip(expected) {
        assert_eq!(id, eid);
        assert!((s - es).abs() < 1e-12, "{id}: {s} vs {es}");
    }
}

#[test]
fn rank_alef_on_triangle() {
    let dir = tempfile::tempdir().unwrap();
    triangle(dir.path());
    ok(&["rank", "--method", "alef", "--edges", "e.tsv", "--out", "s.tsv"], dir.path());
    assert_scores(&dir.path().join("s.tsv"), &[("A", 0.3), ("B", 0.5), ("C", 0.2)]);
    assert!(dir.path().join("s.tsv.manifest.json").exists());
}

#[test]
fn rank_indegree_on_triangle() {
    let dir = tempfile::tempdir().unwrap();
    triangle(dir.path());
    ok(&["rank", "--method", "indegree", "--edges", "e.tsv", "--out", "s.tsv"], dir.path());
    assert_scores(
        &dir.path().join("s.tsv"),
        &[("A", 1.0 / 3.0), ("B", 2.0 / 3.0), ("C", 0.0)],
    );
}

#[test]
fn rank_walk_flags() {
    let dir = tempfile::tempdir().unwrap();
    triangle(dir.path());
    ok(
        &[
            "rank", "--edges", "e.tsv", "--out", "s.tsv", "--steps", "2", "--dangling", "self",
        ],
        dir.path(),
    );
    assert_scores(
        &dir.path().join("s.tsv"),
        &[("A", 1.0 / 6.0), ("B", 13.0 / 18.0), ("C", 1.0 / 9.0)],
    );
    ok(
        &["rank", "--edges", "e.tsv", "--out", "s.tsv", "--count-landing", "false"],
        dir.path(),
    );
    assert_scores(&dir.path().join("s.tsv"), &[("A", 0.25), ("B", 0.75), ("C", 0.0)]);
}

#[test]
fn monte_carlo_needs_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    triangle(dir.path());
    let out = alef(
        &["rank", "--method", "alef-mc", "--edges", "e.tsv", "--out", "s.tsv"],
        dir.path(),
    );
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed"));

    ok(
        &[
            "rank", "--method", "alef-mc", "--edges", "e.tsv", "--out", "s.tsv", "--seed", "3",
            "--samples", "200000",
        ],
        dir.path(),
    );
    let got = read_scores(&dir.path().join("s.tsv"));
    for ((_, s), e) in got.iter().zip([0.3, 0.5, 0.2]) {
        assert!((s - e).abs() < 0.01);
    }
}

#[test]
fn empty_judgments_fail_with_a_named_error() {
    let dir = tempfile::tempdir().unwrap();
    triangle(dir.path());
    ok(&["rank", "--edges", "e.tsv", "--out", "s.tsv"], dir.path());
    std::fs::write(dir.path().join("j.tsv"), "").unwrap();
    let out = alef(&["eval", "--scores", "s.tsv", "--judgments", "j.tsv"], dir.path());
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("judgment set is empty"), "{err}");
}

#[test]
fn eval_reports_performance() {
    let dir = tempfile::tempdir().unwrap();
    triangle(dir.path());
    ok(&["rank", "--edges", "e.tsv", "--out", "s.tsv"], dir.path());
    // B > A holds, C > A fails, A > Z is unresolved.
    std::fs::write(dir.path().join("j.tsv"), "B\tA\nC\tA\nA\tZ\n").unwrap();
    let text = ok(
        &["eval", "--scores", "s.tsv", "--judgments", "j.tsv", "--json", "r.json"],
        dir.path(),
    );
    assert!(text.contains("performance: 0.5"), "{text}");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(json["performance"], 0.5);
    assert_eq!(json["excluded_pairs"], 1);
}

#[test]
fn missing_file_and_unknown_flag_fail() {
    let dir = tempfile::tempdir().unwrap();
    let out = alef(&["rank", "--edges", "nope.tsv", "--out", "s.tsv"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope.tsv"));
    let out = alef(&["rank", "--bogus"], dir.path());
    assert!(!out.status.success());
}

#[test]
fn strict_mode_rejects_malformed_lines() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("e.tsv"), "A\tB\njunk\n").unwrap();
    ok(&["rank", "--edges", "e.tsv", "--out", "s.tsv"], dir.path());
    let out = alef(&["rank", "--edges", "e.tsv", "--out", "s.tsv", "--strict"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn stats_on_triangle() {
    let dir = tempfile::tempdir().unwrap();
    triangle(dir.path());
    let text = ok(&["stats", "--edges", "e.tsv", "--json"], dir.path());
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["nodes"], 3);
    assert_eq!(json["edges"], 3);
}

fn synth(dir: &Path) {
    ok(
        &[
            "synth", "--papers", "300", "--mean-refs", "4", "--author-count", "60", "--pairs",
            "400", "--seed", "11", "--out-dir", "corpus",
        ],
        dir,
    );
}

#[test]
fn synth_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    synth(dir.path());
    let a = std::fs::read(dir.path().join("corpus/edges.tsv")).unwrap();
    std::fs::rename(dir.path().join("corpus"), dir.path().join("first")).unwrap();
    synth(dir.path());
    assert_eq!(a, std::fs::read(dir.path().join("corpus/edges.tsv")).unwrap());
    let out = alef(&["synth", "--out-dir", "x"], dir.path());
    assert!(!out.status.success());
}

#[test]
fn pipeline_matches_stepwise_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d);
    ok(
        &[
            "rank", "--edges", "corpus/edges.tsv", "--authors", "corpus/authors.tsv", "--out",
            "alef.tsv",
        ],
        d,
    );
    ok(
        &[
            "authors", "--edges", "corpus/edges.tsv", "--authors", "corpus/authors.tsv",
            "--scores", "alef.tsv", "--out", "pa.tsv",
        ],
        d,
    );
    ok(
        &["blend", "--scores", "alef.tsv", "--pa", "pa.tsv", "--alef-weight", "0.7", "--out", "final.tsv"],
        d,
    );
    std::fs::write(
        d.join("run.toml"),
        "edges = \"corpus/edges.tsv\"\nauthors = \"corpus/authors.tsv\"\nout = \"piped.tsv\"\n\n[blend]\nalef_weight = 0.7\n",
    )
    .unwrap();
    ok(&["pipeline", "--config", "run.toml"], d);
    assert_eq!(
        std::fs::read_to_string(d.join("final.tsv")).unwrap(),
        std::fs::read_to_string(d.join("piped.tsv")).unwrap()
    );
}

#[test]
fn pipeline_without_authors_equals_alef() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d);
    ok(&["rank", "--edges", "corpus/edges.tsv", "--out", "alef.tsv"], d);
    std::fs::write(d.join("run.toml"), "edges = \"corpus/edges.tsv\"\nout = \"final.tsv\"\n").unwrap();
    ok(&["pipeline", "--config", "run.toml"], d);
    let alef_scores = read_scores(&d.join("alef.tsv"));
    let final_scores = read_scores(&d.join("final.tsv"));
    assert_eq!(alef_scores.len(), final_scores.len());
    for (a, f) in alef_scores.iter().zip(&final_scores) {
        assert_eq!(a.0, f.0);
        assert_eq!(a.1.to_bits(), f.1.to_bits());
    }
}

#[test]
fn replay_reproduces_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d);
    ok(
        &[
            "rank", "--method", "alef-mc", "--edges", "corpus/edges.tsv", "--out", "mc.tsv",
            "--seed", "5", "--samples", "20000",
        ],
        d,
    );
    let before = std::fs::read(d.join("mc.tsv")).unwrap();
    std::fs::remove_file(d.join("mc.tsv")).unwrap();
    ok(&["replay", "--manifest", "mc.tsv.manifest.json"], d);
    assert_eq!(before, std::fs::read(d.join("mc.tsv")).unwrap());

    // A changed input is refused rather than silently replayed.
    std::fs::write(d.join("corpus/edges.tsv"), "x\ty\n").unwrap();
    let out = alef(&["replay", "--manifest", "mc.tsv.manifest.json"], d);
    assert!(!out.status.success());
}

#[test]
fn randomize_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    synth(d);
    ok(&["rank", "--edges", "corpus/edges.tsv", "--authors", "corpus/authors.tsv", "--out", "alef.tsv"], d);
    ok(&["randomize", "--scores", "alef.tsv", "--seed", "9", "--out", "r1.tsv"], d);
    ok(&["randomize", "--scores", "alef.tsv", "--seed", "9", "--out", "r2.tsv"], d);
    assert_eq!(std::fs::read(d.join("r1.tsv")).unwrap(), std::fs::read(d.join("r2.tsv")).unwrap());
    assert!(read_scores(&d.join("r1.tsv")).iter().all(|(_, s)| *s > 0.0));

    ok(
        &[
            "authors", "--edges", "corpus/edges.tsv", "--authors", "corpus/authors.tsv",
            "--scores", "alef.tsv", "--out", "pa.tsv",
        ],
        d,
    );
    let text = ok(
        &["sweep", "--scores", "alef.tsv", "--pa", "pa.tsv", "--judgments", "corpus/judgments.tsv"],
        d,
    );
    assert!(text.contains("best"), "{text}");
}
