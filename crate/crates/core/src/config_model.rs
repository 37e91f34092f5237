//! Degree-preserving null model: double edge swaps on vertex-labeled simple
//! graphs.

use rand::Rng;
use rayon::prelude::*;

use crate::chain::{ChainConfig, ChainStats, RunReport, SampleBatch, SamplerKind};
use crate::cores::{core_decomposition, LabelMap};
use crate::edge_index::EdgeIndex;
use crate::error::Result;
use crate::graph::Graph;
use crate::rng::stream_rng;

/// A walker that swaps endpoints of two edges at a time.
#[derive(Debug, Clone)]
pub struct SwapChain {
    graph: Graph,
    edges: EdgeIndex,
    steps: u64,
    accepted: u64,
}

impl SwapChain {
    pub fn new(graph: Graph) -> Self {
        let edges = EdgeIndex::from_graph(&graph);
        SwapChain {
            graph,
            edges,
            steps: 0,
            accepted: 0,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    /// Picks two distinct edges and one of the two re-pairings uniformly.
    /// Swaps that would create a self-loop or a parallel edge leave the
    /// graph unchanged. Returns whether the graph changed.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        self.steps += 1;
        let m = self.edges.len();
        if m < 2 {
            return false;
        }
        let first = rng.gen_range(0..m);
        let mut second = rng.gen_range(0..m - 1);
        if second >= first {
            second += 1;
        }
        let (a, b) = self.edges.get(first);
        let (c, d) = self.edges.get(second);
        let ((p, q), (r, s)) = if rng.gen::<bool>() {
            ((a, c), (b, d))
        } else {
            ((a, d), (b, c))
        };
        if p == q || r == s || self.graph.has_edge(p, q) || self.graph.has_edge(r, s) {
            return false;
        }
        for (u, v) in [(a, b), (c, d)] {
            self.graph.remove_edge(u, v);
            self.edges.remove(u, v);
        }
        for (u, v) in [(p, q), (r, s)] {
            self.graph.add_edge(u, v);
            self.edges.insert(u, v);
        }
        self.accepted += 1;
        true
    }
}

/// One double edge swap attempt on `g`.
///
/// Rebuilds the edge index on every call; use [`SwapChain`] for long runs.
pub fn double_edge_swap_step<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Graph {
    let mut chain = SwapChain::new(g.clone());
    chain.step(rng);
    chain.into_graph()
}

/// Independent swap runs from `g`, one random stream each.
pub fn config_sample(g: &Graph, cfg: &ChainConfig) -> Result<SampleBatch> {
    let steps = cfg.steps_for(g.edge_count());
    let (graphs, runs): (Vec<_>, Vec<_>) = (0..cfg.num_samples)
        .into_par_iter()
        .map(|run| {
            let mut rng = stream_rng(cfg.seed, run as u64);
            let mut chain = SwapChain::new(g.clone());
            for _ in 0..steps {
                chain.step(&mut rng);
            }
            let stats = ChainStats {
                self_loops: steps - chain.accepted(),
                ..Default::default()
            };
            let report = RunReport {
                steps,
                stats,
                ..Default::default()
            };
            (chain.into_graph(), report)
        })
        .unzip();
    Ok(SampleBatch {
        target: core_decomposition(g).sequence(),
        labels: LabelMap::identity(g.node_count()),
        sampler: SamplerKind::Configuration,
        start_edges: g.edge_count(),
        graphs,
        runs,
    })
}
