//! Citation edges and authorship records: parsing, interning and CSR indexing.
//!
//! Paper and author identifiers are arbitrary strings in the input files.
//! They are interned to dense integer ids in order of first appearance, with
//! the citing field scanned before the cited field on each line, so the same
//! file always yields the same id assignment.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use indexmap::IndexSet;
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense paper index in `0..node_count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NodeId(u32);

impl NodeId {
    pub fn new(index: usize) -> Self {
        NodeId(u32::try_from(index).expect("node index exceeds u32 range"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Dense author index in `0..author_count`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AuthorId(u32);

impl AuthorId {
    pub fn new(index: usize) -> Self {
        AuthorId(u32::try_from(index).expect("author index exceeds u32 range"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// How malformed input lines are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strictness {
    /// The first malformed line aborts the load.
    Strict,
    /// Malformed lines are skipped and counted.
    #[default]
    Lenient,
}

/// Counts gathered while reading a TSV file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    pub data_lines: usize,
    pub comment_lines: usize,
    pub malformed: usize,
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Compressed sparse rows. Row `i` is `targets[offsets[i]..offsets[i + 1]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Csr {
    /// Stable counting sort of `pairs` by key; rows keep input order.
    fn build(rows: usize, pairs: impl Iterator<Item = (usize, NodeId)> + Clone) -> Self {
        let mut offsets = vec![0usize; rows + 1];
        for (row, _) in pairs.clone() {
            offsets[row + 1] += 1;
        }
        for i in 0..rows {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets[..rows].to_vec();
        let mut targets = vec![NodeId(0); offsets[rows]];
        for (row, target) in pairs {
            targets[cursor[row]] = target;
            cursor[row] += 1;
        }
        Csr { offsets, targets }
    }

    fn row(&self, i: usize) -> &[NodeId] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    fn push_empty_row(&mut self) {
        let end = *self.offsets.last().expect("offsets never empty");
        self.offsets.push(end);
    }
}

/// Directed citation graph: an edge `citing -> cited` for every reference.
///
/// Holds the edge list in load order plus forward (cites) and reverse
/// (cited-by) adjacency. Self-loops and duplicate edges never survive
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CitationGraph {
    labels: IndexSet<String>,
    edges: Vec<(NodeId, NodeId)>,
    forward: Csr,
    reverse: Csr,
}

impl Default for CitationGraph {
    fn default() -> Self {
        Self::from_interned(IndexSet::new(), Vec::new()).0
    }
}

impl CitationGraph {
    /// Builds a graph from already interned labels and raw edges, dropping
    /// self-loops and repeated edges (the first occurrence is kept).
    ///
    /// Returns the graph with the number of dropped self-loops and duplicates.
    pub fn from_interned(
        labels: IndexSet<String>,
        raw: Vec<(NodeId, NodeId)>,
    ) -> (Self, usize, usize) {
        let n = labels.len();
        let before = raw.len();
        let mut edges: Vec<(NodeId, NodeId)> = raw.into_iter().filter(|(u, v)| u != v).collect();
        let self_loops = before - edges.len();

        // Per-row dedup on edge positions, keeping the earliest copy.
        let slots = Csr::build(
            n,
            edges
                .iter()
                .enumerate()
                .map(|(pos, &(u, _))| (u.index(), NodeId::new(pos))),
        );
        let mut keep = vec![true; edges.len()];
        let mut row_buf: Vec<(NodeId, usize)> = Vec::new();
        for u in 0..n {
            let row = slots.row(u);
            if row.len() < 2 {
                continue;
            }
            row_buf.clear();
            row_buf.extend(row.iter().map(|p| (edges[p.index()].1, p.index())));
            row_buf.sort_unstable();
            for w in row_buf.windows(2) {
                if w[0].0 == w[1].0 {
                    keep[w[1].1] = false;
                }
            }
        }
        drop(slots);
        let mut it = keep.iter();
        edges.retain(|_| *it.next().unwrap());
        let duplicates = keep.iter().filter(|k| !**k).count();

        let forward = Csr::build(n, edges.iter().map(|&(u, v)| (u.index(), v)));
        let reverse = Csr::build(n, edges.iter().map(|&(u, v)| (v.index(), u)));
        let graph = CitationGraph {
            labels,
            edges,
            forward,
            reverse,
        };
        (graph, self_loops, duplicates)
    }

    /// Convenience constructor from string pairs, interning in order.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, S)]) -> Self {
        let mut labels = IndexSet::new();
        let raw = pairs
            .iter()
            .map(|(a, b)| {
                let u = intern(&mut labels, a.as_ref());
                let v = intern(&mut labels, b.as_ref());
                (u, v)
            })
            .collect();
        Self::from_interned(labels, raw).0
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in load order.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Papers cited by `node`.
    pub fn cites(&self, node: NodeId) -> &[NodeId] {
        self.forward.row(node.index())
    }

    /// Papers citing `node`.
    pub fn cited_by(&self, node: NodeId) -> &[NodeId] {
        self.reverse.row(node.index())
    }

    pub fn out_degree(&self, node: NodeId) -> usize {
        self.forward.degree(node.index())
    }

    pub fn in_degree(&self, node: NodeId) -> usize {
        self.reverse.degree(node.index())
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> {
        (0..self.node_count()).map(NodeId::new)
    }

    pub fn label(&self, node: NodeId) -> &str {
        self.labels
            .get_index(node.index())
            .expect("node id out of range")
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.labels.get_index_of(label).map(NodeId::new)
    }

    /// Looks up `label`, adding it as an isolated node when absent.
    pub fn intern_isolated(&mut self, label: &str) -> NodeId {
        if let Some(id) = self.node_id(label) {
            return id;
        }
        let id = intern(&mut self.labels, label);
        self.forward.push_empty_row();
        self.reverse.push_empty_row();
        id
    }

    /// Writes the edges back out in load order, one `citing\tcited` per line.
    pub fn write_edges<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for &(u, v) in &self.edges {
            writeln!(out, "{}\t{}", self.label(u), self.label(v))?;
        }
        Ok(())
    }

    /// Writes `string_id\tnode_id` for every node.
    pub fn write_id_map<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (i, label) in self.labels.iter().enumerate() {
            writeln!(out, "{label}\t{i}")?;
        }
        Ok(())
    }
}

fn intern(labels: &mut IndexSet<String>, label: &str) -> NodeId {
    match labels.get_index_of(label) {
        Some(i) => NodeId::new(i),
        None => NodeId::new(labels.insert_full(label.to_owned()).0),
    }
}

/// One parsed line of a two-column TSV file.
pub(crate) enum Line<'a> {
    Skip,
    Comment,
    Pair(&'a str, &'a str),
    Malformed(&'static str),
}

pub(crate) fn classify(line: &str) -> Line<'_> {
    let line = line.trim_end_matches(['\n', '\r']);
    if line.starts_with('#') {
        return Line::Comment;
    }
    if line.trim().is_empty() {
        return Line::Skip;
    }
    let mut fields = line.split('\t');
    let (Some(a), Some(b)) = (fields.next(), fields.next()) else {
        return Line::Malformed("expected two tab-separated fields");
    };
    if fields.next().is_some() {
        return Line::Malformed("more than two fields");
    }
    if a.is_empty() || b.is_empty() {
        return Line::Malformed("empty identifier");
    }
    Line::Pair(a, b)
}

/// Streams a two-column TSV, calling `on_pair` for every data line.
pub(crate) fn read_pairs<R, F>(
    mut reader: R,
    strictness: Strictness,
    report: &mut LoadReport,
    mut on_pair: F,
) -> Result<()>
where
    R: BufRead,
    F: FnMut(&str, &str),
{
    let mut buf = String::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        if reader.read_line(&mut buf)? == 0 {
            return Ok(());
        }
        line_no += 1;
        match classify(&buf) {
            Line::Skip => {}
            Line::Comment => report.comment_lines += 1,
            Line::Pair(a, b) => {
                report.data_lines += 1;
                on_pair(a, b);
            }
            Line::Malformed(reason) => match strictness {
                Strictness::Strict => {
                    return Err(Error::Malformed {
                        line: line_no,
                        reason: reason.to_owned(),
                    })
                }
                Strictness::Lenient => report.malformed += 1,
            },
        }
    }
}

/// Parses `citing\tcited` lines.
pub fn parse_edges<R: BufRead>(
    reader: R,
    strictness: Strictness,
) -> Result<(CitationGraph, LoadReport)> {
    let mut report = LoadReport::default();
    let mut labels = IndexSet::new();
    let mut raw = Vec::new();
    read_pairs(reader, strictness, &mut report, |a, b| {
        let u = intern(&mut labels, a);
        let v = intern(&mut labels, b);
        raw.push((u, v));
    })?;
    let (graph, self_loops, duplicates) = CitationGraph::from_interned(labels, raw);
    report.self_loops = self_loops;
    report.duplicates = duplicates;
    Ok((graph, report))
}

pub fn load_edges(path: &Path, strictness: Strictness) -> Result<(CitationGraph, LoadReport)> {
    let file = File::open(path).map_err(|e| Error::file(path, e))?;
    parse_edges(BufReader::new(file), strictness)
}

/// Bipartite paper/author relation, indexed both ways.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuthorshipMap {
    authors: IndexSet<String>,
    pairs: Vec<(NodeId, AuthorId)>,
    by_paper: Vec<Vec<AuthorId>>,
    by_author: Vec<Vec<NodeId>>,
}

impl AuthorshipMap {
    /// Builds the map from `(paper, author)` pairs, dropping repeats.
    /// `paper_count` must cover every paper id in `pairs`.
    pub fn from_interned(
        authors: IndexSet<String>,
        paper_count: usize,
        raw: impl IntoIterator<Item = (NodeId, AuthorId)>,
    ) -> (Self, usize) {
        let mut seen = HashSet::new();
        let mut pairs = Vec::new();
        let mut duplicates = 0;
        for pair in raw {
            if seen.insert(pair) {
                pairs.push(pair);
            } else {
                duplicates += 1;
            }
        }
        let mut by_paper = vec![Vec::new(); paper_count];
        let mut by_author = vec![Vec::new(); authors.len()];
        for &(p, a) in &pairs {
            by_paper[p.index()].push(a);
            by_author[a.index()].push(p);
        }
        let map = AuthorshipMap {
            authors,
            pairs,
            by_paper,
            by_author,
        };
        (map, duplicates)
    }

    /// Builds the map from string pairs, interning unseen papers into `graph`
    /// as isolated nodes.
    pub fn from_pairs<S: AsRef<str>>(graph: &mut CitationGraph, pairs: &[(S, S)]) -> Self {
        let mut authors = IndexSet::new();
        let raw: Vec<_> = pairs
            .iter()
            .map(|(p, a)| {
                let p = graph.intern_isolated(p.as_ref());
                let a = AuthorId::new(authors.insert_full(a.as_ref().to_owned()).0);
                (p, a)
            })
            .collect();
        Self::from_interned(authors, graph.node_count(), raw).0
    }

    pub fn author_count(&self) -> usize {
        self.authors.len()
    }

    /// Number of paper rows (the graph's node count when the map was built).
    pub fn paper_count(&self) -> usize {
        self.by_paper.len()
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// `(paper, author)` pairs in load order.
    pub fn pairs(&self) -> &[(NodeId, AuthorId)] {
        &self.pairs
    }

    /// Authors of `paper`; empty for papers without records.
    pub fn authors_of(&self, paper: NodeId) -> &[AuthorId] {
        self.by_paper
            .get(paper.index())
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn papers_of(&self, author: AuthorId) -> &[NodeId] {
        &self.by_author[author.index()]
    }

    pub fn author_label(&self, author: AuthorId) -> &str {
        self.authors
            .get_index(author.index())
            .expect("author id out of range")
    }

    pub fn author_id(&self, label: &str) -> Option<AuthorId> {
        self.authors.get_index_of(label).map(AuthorId::new)
    }

    pub fn author_ids(&self) -> impl ExactSizeIterator<Item = AuthorId> {
        (0..self.author_count()).map(AuthorId::new)
    }

    /// Writes `paper\tauthor` lines in load order.
    pub fn write<W: Write>(&self, graph: &CitationGraph, mut out: W) -> std::io::Result<()> {
        for &(p, a) in &self.pairs {
            writeln!(out, "{}\t{}", graph.label(p), self.author_label(a))?;
        }
        Ok(())
    }
}

/// Parses `paper\tauthor` lines. Papers missing from `graph` are added to it
/// as isolated nodes so they can still receive author-derived scores.
pub fn parse_authorship<R: BufRead>(
    reader: R,
    graph: &mut CitationGraph,
    strictness: Strictness,
) -> Result<(AuthorshipMap, LoadReport)> {
    let mut report = LoadReport::default();
    let mut authors = IndexSet::new();
    let mut raw = Vec::new();
    read_pairs(reader, strictness, &mut report, |p, a| {
        let paper = graph.intern_isolated(p);
        let author = match authors.get_index_of(a) {
            Some(i) => AuthorId::new(i),
            None => AuthorId::new(authors.insert_full(a.to_owned()).0),
        };
        raw.push((paper, author));
    })?;
    let (map, duplicates) = AuthorshipMap::from_interned(authors, graph.node_count(), raw);
    report.duplicates = duplicates;
    Ok((map, report))
}

pub fn load_authorship(
    path: &Path,
    graph: &mut CitationGraph,
    strictness: Strictness,
) -> Result<(AuthorshipMap, LoadReport)> {
    let file = File::open(path).map_err(|e| Error::file(path, e))?;
    parse_authorship(BufReader::new(file), graph, strictness)
}

/// Degree summary of a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    pub nodes: usize,
    pub edges: usize,
    /// Nodes with at least one incoming citation.
    pub cited: usize,
    /// Nodes with at least one outgoing citation.
    pub citing: usize,
    pub isolated: usize,
    /// Cited but citing nothing.
    pub dangling: usize,
}

pub fn graph_stats(graph: &CitationGraph) -> StatsReport {
    let mut stats = StatsReport {
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        ..Default::default()
    };
    for n in graph.nodes() {
        let (i, o) = (graph.in_degree(n), graph.out_degree(n));
        stats.cited += usize::from(i > 0);
        stats.citing += usize::from(o > 0);
        stats.isolated += usize::from(i == 0 && o == 0);
        stats.dangling += usize::from(i > 0 && o == 0);
    }
    stats
}
