use rand::Rng;
use serde::{Deserialize, Serialize};

use super::moves::{
    decode_in, encode_in, Candidate, EdgeOracle, Move, MoveKind, Universe, UniverseShape,
};
use crate::cores::{core_decomposition, relabel_by_core, CorePeeler, CoreSequence, LabelMap};
use crate::edge_index::EdgeIndex;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Per-kind proposal and acceptance counters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStats {
    /// Slots that fell into the padding region.
    pub self_loops: u64,
    /// Decoded candidates per [`MoveKind`] (indexed by `MoveKind::index`).
    pub proposed: [u64; 8],
    /// Candidates that passed validation and were applied.
    pub accepted: [u64; 8],
}

impl ChainStats {
    pub fn accepted_total(&self) -> u64 {
        self.accepted.iter().sum()
    }

    pub fn merge(&mut self, other: &ChainStats) {
        self.self_loops += other.self_loops;
        for k in 0..8 {
            self.proposed[k] += other.proposed[k];
            self.accepted[k] += other.accepted[k];
        }
    }
}

/// A recorded growth of the slot bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Doubling {
    /// Step index at which the new bound took effect.
    pub step: u64,
    pub delta_hat: u64,
}

/// What one transition did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    SelfLoop,
    Rejected(Move),
    Accepted(Move),
}

/// A walker on the graphs whose node `v` has core value `target[v]`.
///
/// Node ids are core-sorted: `target` is non-increasing, so the top core is
/// `0..top_core_size`.
#[derive(Debug, Clone)]
pub struct ChainState {
    graph: Graph,
    edges: EdgeIndex,
    target: Vec<usize>,
    top_core_size: usize,
    switch_enabled: bool,
    delta_hat: u64,
    step: u64,
    stats: ChainStats,
    doublings: Vec<Doubling>,
    peeler: CorePeeler,
}

struct Oracle<'a> {
    graph: &'a Graph,
    edges: &'a EdgeIndex,
}

impl EdgeOracle for Oracle<'_> {
    #[inline]
    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }
    #[inline]
    fn edge_at(&self, index: usize) -> (usize, usize) {
        self.edges.get(index)
    }
    fn edge_position(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.position_of(u, v)
    }
}

/// Initial slot bound: total universe size rounded up to a power of two,
/// times `headroom`.
pub fn initial_delta_hat(universe_total: u64, headroom: u64) -> u64 {
    universe_total.max(1).next_power_of_two() * headroom.max(1)
}

impl ChainState {
    /// Starts a walk at `graph`, whose ids must already be core-sorted.
    /// Uses the default headroom of 4 for the slot bound.
    pub fn new(graph: Graph) -> Result<Self> {
        Self::with_headroom(graph, 4)
    }

    pub fn with_headroom(graph: Graph, headroom: u64) -> Result<Self> {
        let decomposition = core_decomposition(&graph);
        let target = decomposition.core_of;
        if target.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(
                "chain start graph must have core values non-increasing in node id".into(),
            ));
        }
        let top = target.first().copied().unwrap_or(0);
        let top_core_size = target.iter().take_while(|&&c| c == top).count();
        let edges = EdgeIndex::from_graph(&graph);
        let mut state = ChainState {
            graph,
            edges,
            target,
            top_core_size,
            switch_enabled: top == 2,
            delta_hat: 1,
            step: 0,
            stats: ChainStats::default(),
            doublings: Vec::new(),
            peeler: CorePeeler::new(),
        };
        state.delta_hat = initial_delta_hat(state.universe_total(), headroom);
        Ok(state)
    }

    /// Relabels an arbitrary graph by core value and starts a walk on it.
    pub fn from_graph(g: &Graph) -> (Self, LabelMap) {
        let (sorted, labels) = relabel_by_core(g);
        let state = ChainState::new(sorted).expect("relabelled graph is core-sorted");
        (state, labels)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// Per-node target core values.
    pub fn target(&self) -> &[usize] {
        &self.target
    }

    pub fn target_sequence(&self) -> CoreSequence {
        CoreSequence::new(self.target.clone()).expect("target is sorted")
    }

    pub fn switch_enabled(&self) -> bool {
        self.switch_enabled
    }

    /// Overrides whether top-core switches are proposed.
    pub fn set_switch_enabled(&mut self, enabled: bool) {
        self.switch_enabled = enabled;
    }

    pub fn delta_hat(&self) -> u64 {
        self.delta_hat
    }

    /// Replaces the slot bound. Values below the current universe total are
    /// raised on the next transition.
    pub fn set_delta_hat(&mut self, delta_hat: u64) {
        self.delta_hat = delta_hat.max(1);
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    pub fn stats(&self) -> &ChainStats {
        &self.stats
    }

    pub fn doublings(&self) -> &[Doubling] {
        &self.doublings
    }

    pub fn shape(&self) -> UniverseShape {
        UniverseShape {
            n: self.graph.node_count(),
            m: self.graph.edge_count(),
            top_core_size: self.top_core_size,
            switch_enabled: self.switch_enabled,
        }
    }

    pub fn universe_size(&self, universe: Universe) -> u64 {
        self.shape().size(universe)
    }

    pub fn universe_total(&self) -> u64 {
        self.shape().total()
    }

    /// Number of proposal slots per step.
    pub fn slot_count(&self) -> u64 {
        2 * self.delta_hat
    }

    fn oracle(&self) -> Oracle<'_> {
        Oracle {
            graph: &self.graph,
            edges: &self.edges,
        }
    }

    /// Decodes a proposal slot against the current graph.
    pub fn decode_candidate(&self, slot: u64) -> Result<Candidate> {
        let limit = self.slot_count();
        if slot >= limit {
            return Err(Error::SlotOutOfRange { slot, limit });
        }
        Ok(self.decode_unchecked(slot))
    }

    fn decode_unchecked(&self, mut slot: u64) -> Candidate {
        let shape = self.shape();
        let oracle = self.oracle();
        for universe in Universe::ORDER {
            let size = shape.size(universe);
            if slot < size {
                return Candidate::Move(decode_in(&oracle, &shape, universe, slot));
            }
            slot -= size;
        }
        Candidate::SelfLoop
    }

    /// The slot that proposes `mv` in the current graph, if any.
    pub fn encode(&self, mv: &Move) -> Option<u64> {
        let shape = self.shape();
        let (universe, code) = encode_in(&self.oracle(), &shape, mv)?;
        let offset: u64 = Universe::ORDER
            .iter()
            .take_while(|&&u| u != universe)
            .map(|&u| shape.size(u))
            .sum();
        Some(offset + code)
    }

    fn structurally_valid(&self, mv: &Move) -> bool {
        let g = &self.graph;
        let c = &self.target;
        let collapse_roles = |h: usize, i: usize, j: usize| c[h] > c[i] && c[i] == c[j];
        match *mv {
            Move::Add(u, v) => !g.has_edge(u, v),
            Move::Delete(u, v) => g.has_edge(u, v),
            Move::MoveEndpoint { h, i, j } => {
                c[j] < c[h].min(c[i]) && g.has_edge(h, j) && !g.has_edge(i, j)
            }
            Move::CoreCollapse { h, i, j } => {
                collapse_roles(h, i, j) && g.has_edge(h, i) && g.has_edge(h, j) && !g.has_edge(i, j)
            }
            Move::CoreExpand { h, i, j } => {
                collapse_roles(h, i, j) && g.has_edge(i, j) && !g.has_edge(h, i) && !g.has_edge(h, j)
            }
            Move::HalfCollapse { h, i, j } => {
                collapse_roles(h, i, j) && g.has_edge(h, i) && !g.has_edge(i, j)
            }
            Move::HalfExpand { h, i, j } => {
                collapse_roles(h, i, j) && g.has_edge(i, j) && !g.has_edge(h, i)
            }
            Move::SwitchTopCore { h, i, j, l } => {
                self.switch_enabled
                    && [h, i, j, l].iter().all(|&v| v < self.top_core_size)
                    && g.has_edge(h, i)
                    && g.has_edge(j, l)
                    && !g.has_edge(h, j)
                    && !g.has_edge(i, l)
            }
        }
    }

    fn edit_graph(&mut self, mv: &Move) {
        let edits = mv.edits();
        for &(u, v) in edits.removed() {
            self.graph.remove_edge(u, v);
        }
        for &(u, v) in edits.added() {
            self.graph.add_edge(u, v);
        }
    }

    fn edit_index(&mut self, mv: &Move) {
        let edits = mv.edits();
        for &(u, v) in edits.removed() {
            self.edges.remove(u, v);
        }
        for &(u, v) in edits.added() {
            self.edges.insert(u, v);
        }
    }

    /// Whether `mv` keeps every core value. Leaves the state untouched.
    fn keeps_cores(&mut self, mv: &Move) -> bool {
        if !self.structurally_valid(mv) {
            return false;
        }
        self.edit_graph(mv);
        let ok = self.cores_match_target();
        self.edit_graph(&mv.inverse());
        ok
    }

    fn cores_match_target(&mut self) -> bool {
        self.peeler.core_numbers(&self.graph) == self.target.as_slice()
    }

    /// Applies `mv` if it is valid, leaving the graph unchanged otherwise.
    fn try_apply(&mut self, mv: &Move) -> bool {
        if !self.structurally_valid(mv) {
            return false;
        }
        self.edit_graph(mv);
        if self.cores_match_target() {
            self.edit_index(mv);
            true
        } else {
            self.edit_graph(&mv.inverse());
            false
        }
    }

    /// Whether `mv` is a legal move from the current graph: its edge pattern
    /// and node roles match, and every node keeps its core value.
    pub fn validate(&mut self, mv: &Move) -> bool {
        self.keeps_cores(mv)
    }

    /// Applies a move without recording statistics. Returns `false` and
    /// leaves the graph unchanged when the move is invalid.
    pub fn apply(&mut self, mv: &Move) -> bool {
        self.try_apply(mv)
    }

    /// Raises the slot bound until it covers the current universe.
    fn ensure_bound(&mut self) {
        let total = self.universe_total();
        if total > self.delta_hat {
            while total > self.delta_hat {
                self.delta_hat *= 2;
            }
            self.doublings.push(Doubling {
                step: self.step,
                delta_hat: self.delta_hat,
            });
        }
    }

    /// One step of the walk.
    pub fn transition<R: Rng + ?Sized>(&mut self, rng: &mut R) -> StepOutcome {
        self.ensure_bound();
        let slot = rng.gen_range(0..self.slot_count());
        self.step += 1;
        match self.decode_unchecked(slot) {
            Candidate::SelfLoop => {
                self.stats.self_loops += 1;
                StepOutcome::SelfLoop
            }
            Candidate::Move(mv) => {
                let kind = mv.kind().index();
                self.stats.proposed[kind] += 1;
                if self.try_apply(&mv) {
                    self.stats.accepted[kind] += 1;
                    debug_assert_eq!(core_decomposition(&self.graph).core_of, self.target);
                    StepOutcome::Accepted(mv)
                } else {
                    StepOutcome::Rejected(mv)
                }
            }
        }
    }

    /// Runs at least `steps` transitions, extending the run so that the last
    /// growth of the slot bound happened before its midpoint.
    pub fn run<R: Rng + ?Sized>(&mut self, steps: u64, rng: &mut R) {
        let start = self.step;
        let mut end = start + steps;
        while self.step < end {
            self.transition(rng);
            if let Some(last) = self.doublings.last() {
                if last.step >= start {
                    end = end.max(start + 2 * (last.step - start) + 1);
                }
            }
        }
    }

    /// All valid moves from the current graph, found by decoding every
    /// non-padding slot. Intended for small graphs.
    pub fn enumerate_valid_moves(&mut self) -> Vec<(u64, Move)> {
        let total = self.universe_total();
        let mut out = Vec::new();
        for slot in 0..total {
            if let Candidate::Move(mv) = self.decode_unchecked(slot) {
                if self.validate(&mv) {
                    out.push((slot, mv));
                }
            }
        }
        out
    }

    pub fn move_kinds() -> &'static [MoveKind] {
        &MoveKind::ALL
    }
}
