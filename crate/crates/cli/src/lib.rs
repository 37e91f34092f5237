//! Command-line front end: core decomposition, realization, sampling,
//! analysis of samples and state-space enumeration.

mod analyze;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use corewalk::analysis::{enumerate_core_space, MAX_ENUMERATION_NODES};
use corewalk::io::{self as cio, LabeledGraph, NodeLabels};
use corewalk::{config_sample, core_decomposition, realize, sample, ChainConfig, CoreSequence, SampleInput};

pub use analyze::{AnalysisReport, NullBlock};

/// Exit code for malformed input and failed validation.
pub const EXIT_INPUT: i32 = 2;
/// Exit code for a core sequence no graph has.
pub const EXIT_UNREALIZABLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "corewalk", version, about = "Random graphs with a prescribed k-core sequence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the core sequence of an edge list.
    Cores(CoresArgs),
    /// Build a graph with a given core sequence.
    Realize(RealizeArgs),
    /// Draw a batch of null-model samples.
    Sample(SampleArgs),
    /// Compare a graph with one or more sample batches.
    Analyze(AnalyzeArgs),
    /// Count all labeled graphs with a given core sequence.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Args)]
pub struct CoresArgs {
    /// Edge list, one `u v` pair per line.
    pub graph: PathBuf,
    /// Also write `label<TAB>core` for every node.
    #[arg(long)]
    pub per_node: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RealizeArgs {
    /// Whitespace-separated core values.
    pub seq: PathBuf,
    /// Output edge list; stdout when omitted.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Uniform over graphs with the same core values.
    Kcore,
    /// Uniform over graphs with the same degrees.
    Config,
}

impl Model {
    fn name(self) -> &'static str {
        match self {
            Model::Kcore => "kcore",
            Model::Config => "configuration",
        }
    }
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Start from this edge list.
    #[arg(long, conflicts_with = "seq", required_unless_present = "seq")]
    pub graph: Option<PathBuf>,
    /// Start from a realization of this core sequence file.
    #[arg(long)]
    pub seq: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "kcore")]
    pub model: Model,
    /// Steps per sample; defaults to 100 times the edge count.
    #[arg(long)]
    pub steps: Option<u64>,
    #[arg(long, default_value_t = corewalk::chain::DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, env = "COREWALK_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Worker threads; defaults to all cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Multiplier on the initial proposal-slot bound.
    #[arg(long, default_value_t = 4)]
    pub headroom: u64,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Sample batch directory; repeat for several null models.
    #[arg(long = "null-dir", required = true)]
    pub null_dirs: Vec<PathBuf>,
    /// TSV of categorical node attributes.
    #[arg(long)]
    pub attrs: Option<PathBuf>,
    #[arg(long)]
    pub report: PathBuf,
    /// Where the per-figure CSV files go; defaults to the report's directory.
    #[arg(long)]
    pub csv_dir: Option<PathBuf>,
    /// Additive constant in the subgraph ratio denominator.
    #[arg(long, default_value_t = corewalk::analysis::DEFAULT_SRP_EPSILON)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub seq: PathBuf,
    /// Print every graph, one edge list per line.
    #[arg(long)]
    pub list: bool,
}

/// A failed command and the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let unrealizable = error.chain().any(|cause| {
            matches!(
                cause.downcast_ref::<corewalk::Error>(),
                Some(corewalk::Error::Unrealizable(_) | corewalk::Error::TooFewNodes { .. })
            )
        });
        let code = if unrealizable { EXIT_UNREALIZABLE } else { EXIT_INPUT };
        Failure { code, error }
    }
}

/// Runs one command, writing its normal output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Cores(args) => cmd_cores(&args, out),
        Command::Realize(args) => cmd_realize(&args, out),
        Command::Sample(args) => cmd_sample(&args, out),
        Command::Analyze(args) => analyze::cmd_analyze(&args, out),
        Command::Enumerate(args) => cmd_enumerate(&args, out),
    }
    .map_err(Failure::from)
}

fn read_graph(path: &Path) -> anyhow::Result<LabeledGraph> {
    cio::read_edge_list(path).with_context(|| format!("reading graph {}", path.display()))
}

fn read_sequence(path: &Path) -> anyhow::Result<CoreSequence> {
    let (seq, reordered) =
        cio::read_core_sequence(path).with_context(|| format!("reading core sequence {}", path.display()))?;
    if reordered {
        log::info!("{}: sorted core values into non-increasing order", path.display());
    }
    Ok(seq)
}

pub fn cmd_cores(args: &CoresArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let lg = read_graph(&args.graph)?;
    let d = core_decomposition(&lg.graph);
    writeln!(out, "{}", d.sequence())?;
    if let Some(path) = &args.per_node {
        let mut text = String::from("node\tcore\n");
        for (v, c) in d.core_of.iter().enumerate() {
            text.push_str(&format!("{}\t{c}\n", lg.labels.name(v)));
        }
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

pub fn cmd_realize(args: &RealizeArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let seq = read_sequence(&args.seq)?;
    let g = realize(&seq)?;
    let labels = NodeLabels::numeric(g.node_count());
    match &args.out {
        Some(path) => cio::write_edge_list_file(path, &g, &labels)?,
        None => cio::write_edge_list(out, &g, &labels)?,
    }
    Ok(())
}

pub fn cmd_sample(args: &SampleArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let (input, labels, source) = match (&args.graph, &args.seq) {
        (Some(path), _) => {
            let lg = read_graph(path)?;
            (SampleInput::Graph(lg.graph), lg.labels, path.display().to_string())
        }
        (None, Some(path)) => {
            let seq = read_sequence(path)?;
            let labels = NodeLabels::numeric(seq.len());
            (SampleInput::Sequence(seq), labels, path.display().to_string())
        }
        (None, None) => bail!("one of --graph or --seq is required"),
    };
    if args.headroom == 0 {
        bail!("--headroom must be at least 1");
    }
    let cfg = ChainConfig {
        steps: args.steps,
        num_samples: args.samples,
        seed: args.seed,
        delta_hat: None,
        headroom: args.headroom,
    };
    let draw = || -> anyhow::Result<_> {
        Ok(match args.model {
            Model::Kcore => sample(input.clone(), &cfg)?,
            Model::Config => {
                let start = match &input {
                    SampleInput::Graph(g) => g.clone(),
                    SampleInput::Sequence(c) => realize(c)?,
                };
                config_sample(&start, &cfg)?
            }
        })
    };
    let batch = match args.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .context("starting worker threads")?
            .install(draw)?,
        None => draw()?,
    };
    let steps = cfg.steps_for(batch.start_edges);
    let manifest = cio::write_batch(
        &args.out_dir,
        &batch,
        &labels,
        args.model.name(),
        args.seed,
        steps,
        &source,
    )
    .with_context(|| format!("writing batch to {}", args.out_dir.display()))?;
    writeln!(
        out,
        "wrote {} samples of {} to {}",
        manifest.num_samples,
        manifest.target,
        args.out_dir.display()
    )?;
    Ok(())
}

pub fn cmd_enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let seq = read_sequence(&args.seq)?;
    if seq.len() > MAX_ENUMERATION_NODES {
        return Err(corewalk::Error::EnumerationTooLarge {
            n: seq.len(),
            max: MAX_ENUMERATION_NODES,
        }
        .into());
    }
    // Fails with the violated condition when no graph exists.
    realize(&seq)?;
    let graphs = enumerate_core_space(&seq)?;
    writeln!(out, "{}", graphs.len())?;
    if args.list {
        for g in &graphs {
            let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
            writeln!(out, "{}", edges.join(" "))?;
        }
    }
    Ok(())
}
