use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::forest::sample_forest_core1;
use super::state::{ChainState, ChainStats, Doubling};
use crate::cores::{relabel_by_core, CoreSequence, LabelMap};
use crate::error::Result;
use crate::graph::Graph;
use crate::realize::realize;
use crate::rng::stream_rng;

/// Default number of samples per batch.
pub const DEFAULT_SAMPLES: usize = 50;
/// Default steps per run, as a multiple of the starting edge count.
pub const DEFAULT_STEPS_PER_EDGE: u64 = 100;

/// Run schedule shared by the k-core chain and the configuration model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConfig {
    /// Transition attempts per run; `None` means `100 * m` of the start graph.
    pub steps: Option<u64>,
    pub num_samples: usize,
    pub seed: u64,
    /// Overrides the initial slot bound.
    pub delta_hat: Option<u64>,
    /// Multiplier applied to the rounded-up universe size for the initial bound.
    pub headroom: u64,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            steps: None,
            num_samples: DEFAULT_SAMPLES,
            seed: 0,
            delta_hat: None,
            headroom: 4,
        }
    }
}

impl ChainConfig {
    pub fn with_seed(seed: u64) -> Self {
        ChainConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn steps_for(&self, edges: usize) -> u64 {
        self.steps
            .unwrap_or(DEFAULT_STEPS_PER_EDGE * edges as u64)
    }
}

/// Where a batch starts from.
#[derive(Debug, Clone)]
pub enum SampleInput {
    Graph(Graph),
    Sequence(CoreSequence),
}

/// Which sampler produced a batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    /// The Markov chain with the base move set.
    Chain,
    /// The Markov chain plus top-core switches.
    ChainWithSwitch,
    /// Exact forest sampler for maximum core value 1.
    Forest,
    /// Maximum core value 0: the edgeless graph is the only state.
    Empty,
    /// Degree-preserving double edge swaps.
    Configuration,
}

/// Bookkeeping for one independent run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub steps: u64,
    pub initial_delta_hat: u64,
    pub final_delta_hat: u64,
    pub doublings: Vec<Doubling>,
    pub stats: ChainStats,
}

/// Samples in core-sorted internal ids, with the map back to input ids.
#[derive(Debug, Clone)]
pub struct SampleBatch {
    pub target: CoreSequence,
    pub labels: LabelMap,
    pub sampler: SamplerKind,
    pub start_edges: usize,
    pub graphs: Vec<Graph>,
    pub runs: Vec<RunReport>,
}

impl SampleBatch {
    /// Sampled graphs with node ids mapped back to the input's ids.
    pub fn graphs_in_input_ids(&self) -> Vec<Graph> {
        if self.labels.is_identity() {
            return self.graphs.clone();
        }
        self.graphs
            .iter()
            .map(|g| g.permuted(&self.labels.to_original))
            .collect()
    }
}

/// Draws `cfg.num_samples` graphs with the input's core sequence. Each graph
/// is the end state of an independent run with its own random stream.
pub fn sample(input: SampleInput, cfg: &ChainConfig) -> Result<SampleBatch> {
    let (start, labels) = match input {
        SampleInput::Graph(g) => relabel_by_core(&g),
        SampleInput::Sequence(c) => {
            let g = realize(&c)?;
            let n = g.node_count();
            (g, LabelMap::identity(n))
        }
    };
    let probe = ChainState::with_headroom(start.clone(), cfg.headroom)?;
    let target = probe.target_sequence();
    let start_edges = start.edge_count();
    let top = target.max();

    if top <= 1 {
        let sampler = if top == 1 {
            SamplerKind::Forest
        } else {
            SamplerKind::Empty
        };
        let graphs = (0..cfg.num_samples)
            .into_par_iter()
            .map(|run| {
                let mut rng = stream_rng(cfg.seed, run as u64);
                sample_forest_core1(&target, &mut rng)
            })
            .collect::<Result<Vec<_>>>()?;
        let runs = vec![RunReport::default(); graphs.len()];
        return Ok(SampleBatch {
            target,
            labels,
            sampler,
            start_edges,
            graphs,
            runs,
        });
    }

    let sampler = if probe.switch_enabled() {
        SamplerKind::ChainWithSwitch
    } else {
        SamplerKind::Chain
    };
    let steps = cfg.steps_for(start_edges);
    let (graphs, runs): (Vec<_>, Vec<_>) = (0..cfg.num_samples)
        .into_par_iter()
        .map(|run| {
            let mut state = probe.clone();
            if let Some(bound) = cfg.delta_hat {
                state.set_delta_hat(bound);
            }
            let initial_delta_hat = state.delta_hat();
            let mut rng = stream_rng(cfg.seed, run as u64);
            state.run(steps, &mut rng);
            let report = RunReport {
                steps: state.step_count(),
                initial_delta_hat,
                final_delta_hat: state.delta_hat(),
                doublings: state.doublings().to_vec(),
                stats: state.stats().clone(),
            };
            (state.into_graph(), report)
        })
        .unzip();
    Ok(SampleBatch {
        target,
        labels,
        sampler,
        start_edges,
        graphs,
        runs,
    })
}
