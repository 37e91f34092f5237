//! Text formats: edge lists, core sequences, attribute tables and sample
//! batch directories.
//!
//! Edge lists hold one edge per line as two whitespace-separated labels.
//! Lines starting with `#` are comments. A comment of the form
//! `#node <label>` additionally declares a node, which is how isolated
//! nodes survive a round trip.

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::AttributeTable;
use crate::chain::{ChainStats, Doubling, MoveKind, SampleBatch, SamplerKind};
use crate::cores::CoreSequence;
use crate::error::{Error, Result};
use crate::graph::Graph;

const NODE_DIRECTIVE: &str = "#node";

/// String labels for node ids, in order of first appearance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeLabels {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl NodeLabels {
    /// Labels `"0"`, `"1"`, ... for a graph without external names.
    pub fn numeric(n: usize) -> Self {
        let mut labels = NodeLabels::default();
        for v in 0..n {
            labels.intern(&v.to_string());
        }
        labels
    }

    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), id);
        id
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A graph together with the labels its nodes were read under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: NodeLabels,
}

fn parse_error(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_owned(),
        line,
        msg: msg.into(),
    }
}

/// Parses an edge list. `origin` only labels error messages.
pub fn parse_edge_list<R: Read>(reader: R, origin: &Path) -> Result<LabeledGraph> {
    let mut labels = NodeLabels::default();
    let mut edges = Vec::new();
    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::io(origin, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            let declared = trimmed
                .strip_prefix(NODE_DIRECTIVE)
                .filter(|rest| rest.starts_with(char::is_whitespace));
            if let Some(rest) = declared {
                let mut tokens = rest.split_whitespace();
                match (tokens.next(), tokens.next()) {
                    (Some(name), None) => {
                        labels.intern(name);
                    }
                    _ => {
                        return Err(parse_error(
                            origin,
                            lineno,
                            "node declaration needs exactly one label",
                        ))
                    }
                }
            }
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(parse_error(
                    origin,
                    lineno,
                    format!("expected two node labels, got {trimmed:?}"),
                ))
            }
        };
        if a == b {
            return Err(parse_error(origin, lineno, format!("self-loop on {a:?}")));
        }
        let (u, v) = (labels.intern(a), labels.intern(b));
        edges.push((u, v));
    }
    let graph = Graph::from_edges(labels.len(), edges)?;
    Ok(LabeledGraph { graph, labels })
}

pub fn read_edge_list(path: &Path) -> Result<LabeledGraph> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(file, path)
}

/// Writes `g` as a tab-separated edge list, declaring isolated nodes.
pub fn write_edge_list<W: Write>(mut out: W, g: &Graph, labels: &NodeLabels) -> std::io::Result<()> {
    for v in 0..g.node_count() {
        if g.degree(v) == 0 {
            writeln!(out, "{NODE_DIRECTIVE} {}", labels.name(v))?;
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "{}\t{}", labels.name(u), labels.name(v))?;
    }
    Ok(())
}

pub fn write_edge_list_file(path: &Path, g: &Graph, labels: &NodeLabels) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = std::io::BufWriter::new(file);
    write_edge_list(&mut out, g, labels).map_err(|e| Error::io(path, e))?;
    out.flush().map_err(|e| Error::io(path, e))
}

/// Parses whitespace-separated non-negative integers. Returns the sorted
/// sequence and whether sorting changed it.
pub fn parse_core_sequence<R: Read>(reader: R, origin: &Path) -> Result<(CoreSequence, bool)> {
    let mut values = Vec::new();
    for (lineno, line) in BufReader::new(reader).lines().enumerate() {
        let line = line.map_err(|e| Error::io(origin, e))?;
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        for token in line.split_whitespace() {
            let value = token.parse::<usize>().map_err(|_| {
                parse_error(origin, lineno + 1, format!("not a non-negative integer: {token:?}"))
            })?;
            values.push(value);
        }
    }
    Ok(CoreSequence::from_unsorted(values))
}

pub fn read_core_sequence(path: &Path) -> Result<(CoreSequence, bool)> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_core_sequence(file, path)
}

/// Reads a TSV attribute file (header row, node label first) and aligns it
/// with `labels`. Every labelled node needs a row; rows for unknown labels
/// are ignored.
pub fn parse_attributes<R: Read>(reader: R, origin: &Path, labels: &NodeLabels) -> Result<AttributeTable> {
    let mut lines = BufReader::new(reader).lines().enumerate();
    let columns: Vec<String> = loop {
        match lines.next() {
            Some((_, line)) => {
                let line = line.map_err(|e| Error::io(origin, e))?;
                if line.trim().is_empty() || line.starts_with('#') {
                    continue;
                }
                break line.split('\t').skip(1).map(|c| c.trim().to_owned()).collect();
            }
            None => return Err(parse_error(origin, 1, "missing header row")),
        }
    };
    let mut rows: Vec<Option<Vec<String>>> = vec![None; labels.len()];
    for (lineno, line) in lines {
        let line = line.map_err(|e| Error::io(origin, e))?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t').map(|f| f.trim().to_owned());
        let node = fields.next().unwrap_or_default();
        let values: Vec<String> = fields.collect();
        if values.len() != columns.len() {
            return Err(parse_error(
                origin,
                lineno + 1,
                format!("expected {} attribute values, got {}", columns.len(), values.len()),
            ));
        }
        if let Some(id) = labels.id(&node) {
            rows[id] = Some(values);
        }
    }
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(id, row)| {
            row.ok_or_else(|| {
                Error::InvalidInput(format!(
                    "{}: no attributes for node {:?}",
                    origin.display(),
                    labels.name(id)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    AttributeTable::from_rows(columns, rows)
}

pub fn read_attributes(path: &Path, labels: &NodeLabels) -> Result<AttributeTable> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_attributes(file, path, labels)
}

pub const MANIFEST_FILE: &str = "manifest.json";
pub const MANIFEST_SCHEMA: u32 = 1;

/// Per-run entry of a batch manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub file: String,
    pub steps: u64,
    pub initial_delta_hat: u64,
    pub final_delta_hat: u64,
    pub delta_hat_history: Vec<Doubling>,
    pub self_loops: u64,
    pub proposed: KindCounts,
    pub accepted: KindCounts,
    pub edges: usize,
}

/// Move-kind counters keyed by name, serialized in a fixed order.
pub type KindCounts = std::collections::BTreeMap<String, u64>;

fn per_kind(counts: &[u64; 8]) -> KindCounts {
    MoveKind::ALL
        .iter()
        .map(|k| (k.name().to_owned(), counts[k.index()]))
        .collect()
}

/// Description of a sample batch directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: u32,
    /// `"kcore"` or `"configuration"`.
    pub model: String,
    pub sampler: SamplerKind,
    pub target: CoreSequence,
    pub seed: u64,
    pub steps: u64,
    pub num_samples: usize,
    pub start_edges: usize,
    pub input: String,
    pub runs: Vec<RunManifest>,
    pub accepted_total: KindCounts,
}

/// File name of sample `index` in a batch of `total`.
pub fn sample_file_name(index: usize, total: usize) -> String {
    let width = total.saturating_sub(1).to_string().len().max(3);
    format!("sample_{index:0width$}.tsv")
}

/// Writes every graph of `batch` (mapped back to input ids and named with
/// `labels`) plus `manifest.json` into `dir`, creating it if needed.
pub fn write_batch(
    dir: &Path,
    batch: &SampleBatch,
    labels: &NodeLabels,
    model: &str,
    seed: u64,
    steps: u64,
    input: &str,
) -> Result<Manifest> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let graphs = batch.graphs_in_input_ids();
    let mut runs = Vec::with_capacity(graphs.len());
    let mut totals = ChainStats::default();
    for (index, (g, report)) in graphs.iter().zip(&batch.runs).enumerate() {
        let file = sample_file_name(index, graphs.len());
        write_edge_list_file(&dir.join(&file), g, labels)?;
        totals.merge(&report.stats);
        runs.push(RunManifest {
            file,
            steps: report.steps,
            initial_delta_hat: report.initial_delta_hat,
            final_delta_hat: report.final_delta_hat,
            delta_hat_history: report.doublings.clone(),
            self_loops: report.stats.self_loops,
            proposed: per_kind(&report.stats.proposed),
            accepted: per_kind(&report.stats.accepted),
            edges: g.edge_count(),
        });
    }
    let manifest = Manifest {
        schema: MANIFEST_SCHEMA,
        model: model.to_owned(),
        sampler: batch.sampler,
        target: batch.target.clone(),
        seed,
        steps,
        num_samples: graphs.len(),
        start_edges: batch.start_edges,
        input: input.to_owned(),
        runs,
        accepted_total: per_kind(&totals.accepted),
    };
    let path = dir.join(MANIFEST_FILE);
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    fs::write(&path, json).map_err(|e| Error::io(&path, e))?;
    Ok(manifest)
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    let path = dir.join(MANIFEST_FILE);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    Ok(serde_json::from_str(&text)?)
}

/// Sample files of a batch directory, in name order.
pub fn batch_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("sample_") && n.ends_with(".tsv"))
        })
        .collect();
    files.sort();
    Ok(files)
}

/// Reads every sample of a batch directory.
pub fn read_batch(dir: &Path) -> Result<Vec<LabeledGraph>> {
    batch_files(dir)?.iter().map(|p| read_edge_list(p)).collect()
}
