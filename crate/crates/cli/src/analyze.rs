use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use corewalk::analysis::{
    assortativity, count_triangles, four_node_census, mean, sample_std, srp, triangle_degrees, z_score,
    AttributeTable, Pattern, SrpProfile, SubgraphCensus,
};
use corewalk::io::{self as cio, LabeledGraph, Manifest};
use corewalk::Graph;
use rayon::prelude::*;
use serde::Serialize;

use crate::AnalyzeArgs;

pub const REPORT_SCHEMA: u32 = 1;

/// Summary of one scalar statistic over a null batch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    pub real: f64,
    pub mean: f64,
    pub std: f64,
    /// `None` when the null values do not vary.
    pub z: Option<f64>,
    pub values: Vec<f64>,
}

impl Distribution {
    fn new(real: f64, values: Vec<f64>) -> Self {
        let std = if values.len() > 1 { sample_std(&values) } else { 0.0 };
        Distribution {
            real,
            mean: mean(&values),
            std,
            z: z_score(real, &values),
            values,
        }
    }
}

/// Statistics of the observed graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub path: String,
    pub nodes: usize,
    pub edges: usize,
    pub triangles: u64,
    pub census: SubgraphCensus,
    pub assortativity: BTreeMap<String, Option<f64>>,
}

/// Comparison against one sample batch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullBlock {
    pub dir: String,
    pub model: String,
    pub seed: u64,
    pub steps: u64,
    /// Largest slot bound reached by any run.
    pub final_delta_hat: u64,
    pub samples: usize,
    pub edge_counts: Distribution,
    pub triangles: Distribution,
    pub census_mean: [f64; 7],
    pub srp: SrpProfile,
    pub assortativity: BTreeMap<String, Distribution>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub epsilon: f64,
    pub patterns: Vec<&'static str>,
    pub graph: GraphSummary,
    pub nulls: Vec<NullBlock>,
}

/// Per-sample statistics kept for the CSV files.
struct SampleStats {
    edges: usize,
    triangles: u64,
    triangle_degrees: Vec<u64>,
    degrees: Vec<usize>,
    census: SubgraphCensus,
    assortativity: Vec<Option<f64>>,
}

fn stats_of(g: &Graph, attrs: Option<&AttributeTable>) -> SampleStats {
    let mut triangle_degrees = triangle_degrees(g);
    triangle_degrees.sort_unstable_by(|a, b| b.cmp(a));
    let assortativity = attrs
        .map(|table| {
            table
                .columns()
                .iter()
                .map(|col| assortativity(g, table, col).ok())
                .collect()
        })
        .unwrap_or_default();
    SampleStats {
        edges: g.edge_count(),
        triangles: count_triangles(g),
        triangle_degrees,
        degrees: g.sorted_degree_sequence(),
        census: four_node_census(g),
        assortativity,
    }
}

/// Re-indexes a sample so that node ids agree with the observed graph.
fn align(sample: &LabeledGraph, data: &LabeledGraph, file: &Path) -> anyhow::Result<Graph> {
    let n = data.labels.len();
    if sample.labels.len() != n {
        bail!(
            "{}: sample has {} nodes but the graph has {n}",
            file.display(),
            sample.labels.len()
        );
    }
    let new_id = (0..n)
        .map(|v| {
            let name = sample.labels.name(v);
            data.labels
                .id(name)
                .with_context(|| format!("{}: node {name:?} is not in the graph", file.display()))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(sample.graph.permuted(&new_id))
}

fn joined<T: ToString>(values: &[T], sep: &str) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_owned(), |v| v.to_string())
}

struct Csvs {
    triangles: String,
    triangle_degrees: String,
    edge_counts: String,
    degrees: String,
    census: String,
    srp: String,
    assortativity: String,
}

impl Csvs {
    fn new() -> Self {
        let patterns = Pattern::ALL.map(|p| p.name()).join(",");
        Csvs {
            triangles: "source,sample,triangles\n".into(),
            triangle_degrees: "source,sample,triangle_degrees\n".into(),
            edge_counts: "source,sample,edges\n".into(),
            degrees: "source,sample,degrees\n".into(),
            census: format!("source,sample,{patterns}\n"),
            srp: "source,pattern,real,null_mean,delta,srp\n".into(),
            assortativity: "source,attribute,real,null_mean,null_std,z\n".into(),
        }
    }

    fn add_sample(&mut self, source: &str, sample: &str, s: &SampleStats) {
        // Writing into a String cannot fail.
        let _ = writeln!(self.triangles, "{source},{sample},{}", s.triangles);
        let _ = writeln!(self.triangle_degrees, "{source},{sample},{}", joined(&s.triangle_degrees, " "));
        let _ = writeln!(self.edge_counts, "{source},{sample},{}", s.edges);
        let _ = writeln!(self.degrees, "{source},{sample},{}", joined(&s.degrees, " "));
        let _ = writeln!(self.census, "{source},{sample},{}", joined(&s.census.to_array(), ","));
    }

    fn write(&self, dir: &Path) -> anyhow::Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, text) in [
            ("triangles.csv", &self.triangles),
            ("triangle_degrees.csv", &self.triangle_degrees),
            ("edge_counts.csv", &self.edge_counts),
            ("degree_sequences.csv", &self.degrees),
            ("census.csv", &self.census),
            ("srp.csv", &self.srp),
            ("assortativity.csv", &self.assortativity),
        ] {
            let path = dir.join(name);
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

/// Names null batches by directory, disambiguating repeats by position.
fn source_names(dirs: &[PathBuf]) -> Vec<String> {
    let base: Vec<String> = dirs
        .iter()
        .map(|d| {
            d.file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| d.display().to_string())
        })
        .collect();
    base.iter()
        .enumerate()
        .map(|(i, name)| {
            if base.iter().filter(|b| *b == name).count() > 1 || name == "data" {
                format!("{name}#{i}")
            } else {
                name.clone()
            }
        })
        .collect()
}

fn build_report(args: &AnalyzeArgs) -> anyhow::Result<(AnalysisReport, Csvs)> {
    let data = cio::read_edge_list(&args.graph).with_context(|| format!("reading graph {}", args.graph.display()))?;
    let attrs = match &args.attrs {
        Some(path) => Some(
            cio::read_attributes(path, &data.labels)
                .with_context(|| format!("reading attributes {}", path.display()))?,
        ),
        None => None,
    };
    let columns: Vec<String> = attrs.as_ref().map(|t| t.columns().to_vec()).unwrap_or_default();
    let real = stats_of(&data.graph, attrs.as_ref());
    let mut csvs = Csvs::new();
    csvs.add_sample("data", "0", &real);

    let names = source_names(&args.null_dirs);
    let mut nulls = Vec::with_capacity(args.null_dirs.len());
    for (dir, source) in args.null_dirs.iter().zip(&names) {
        let manifest: Manifest =
            cio::read_manifest(dir).with_context(|| format!("reading manifest in {}", dir.display()))?;
        let files = cio::batch_files(dir)?;
        if files.len() < 2 {
            bail!("{}: need at least two samples, found {}", dir.display(), files.len());
        }
        let samples = files
            .par_iter()
            .map(|file| {
                let lg = cio::read_edge_list(file)?;
                let g = align(&lg, &data, file)?;
                Ok(stats_of(&g, attrs.as_ref()))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        for (i, s) in samples.iter().enumerate() {
            csvs.add_sample(source, &i.to_string(), s);
        }

        let censuses: Vec<SubgraphCensus> = samples.iter().map(|s| s.census).collect();
        let profile = srp(&real.census, &censuses, args.epsilon)?;
        for (p, pattern) in Pattern::ALL.iter().enumerate() {
            let _ = writeln!(
                csvs.srp,
                "{source},{},{},{},{},{}",
                pattern.name(),
                real.census.to_array()[p],
                profile.null_mean[p],
                profile.delta[p],
                profile.srp[p]
            );
        }

        let mut assort = BTreeMap::new();
        for (c, col) in columns.iter().enumerate() {
            let Some(r) = real.assortativity[c] else { continue };
            let values: Vec<f64> = samples.iter().filter_map(|s| s.assortativity[c]).collect();
            if values.len() < 2 {
                continue;
            }
            let dist = Distribution::new(r, values);
            let _ = writeln!(
                csvs.assortativity,
                "{source},{col},{r},{},{},{}",
                dist.mean,
                dist.std,
                fmt_opt(dist.z)
            );
            assort.insert(col.clone(), dist);
        }

        nulls.push(NullBlock {
            dir: dir.display().to_string(),
            model: manifest.model.clone(),
            seed: manifest.seed,
            steps: manifest.steps,
            final_delta_hat: manifest.runs.iter().map(|r| r.final_delta_hat).max().unwrap_or(0),
            samples: samples.len(),
            edge_counts: Distribution::new(
                real.edges as f64,
                samples.iter().map(|s| s.edges as f64).collect(),
            ),
            triangles: Distribution::new(
                real.triangles as f64,
                samples.iter().map(|s| s.triangles as f64).collect(),
            ),
            census_mean: profile.null_mean,
            srp: profile,
            assortativity: assort,
        });
    }

    let report = AnalysisReport {
        schema: REPORT_SCHEMA,
        epsilon: args.epsilon,
        patterns: Pattern::ALL.iter().map(|p| p.name()).collect(),
        graph: GraphSummary {
            path: args.graph.display().to_string(),
            nodes: data.graph.node_count(),
            edges: data.graph.edge_count(),
            triangles: real.triangles,
            census: real.census,
            assortativity: columns.iter().cloned().zip(real.assortativity.iter().copied()).collect(),
        },
        nulls,
    };
    Ok((report, csvs))
}

pub fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let (report, csvs) = build_report(args)?;
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    if let Some(parent) = args.report.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(&args.report, json).with_context(|| format!("writing {}", args.report.display()))?;
    let csv_dir = match &args.csv_dir {
        Some(dir) => dir.clone(),
        None => args
            .report
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from(".")),
    };
    csvs.write(&csv_dir)?;
    for block in &report.nulls {
        writeln!(
            out,
            "{}: triangles {} vs null mean {:.2} (z = {})",
            block.dir,
            block.triangles.real,
            block.triangles.mean,
            block.triangles.z.map_or_else(|| "undefined".to_owned(), |z| format!("{z:.3}"))
        )?;
    }
    Ok(())
}
