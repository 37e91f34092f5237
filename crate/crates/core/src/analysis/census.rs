use serde::{Deserialize, Serialize};

use super::triangles::edge_triangles;
use crate::graph::Graph;

/// The counted patterns: the triangle and the six connected 4-node graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    Triangle,
    Path4,
    Claw,
    Cycle4,
    Paw,
    Diamond,
    K4,
}

impl Pattern {
    pub const ALL: [Pattern; 7] = [
        Pattern::Triangle,
        Pattern::Path4,
        Pattern::Claw,
        Pattern::Cycle4,
        Pattern::Paw,
        Pattern::Diamond,
        Pattern::K4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::Triangle => "triangle",
            Pattern::Path4 => "path4",
            Pattern::Claw => "claw",
            Pattern::Cycle4 => "cycle4",
            Pattern::Paw => "paw",
            Pattern::Diamond => "diamond",
            Pattern::K4 => "k4",
        }
    }

    /// Node count and edge list of the pattern graph.
    pub fn shape(self) -> (usize, &'static [(usize, usize)]) {
        match self {
            Pattern::Triangle => (3, &[(0, 1), (1, 2), (0, 2)]),
            Pattern::Path4 => (4, &[(0, 1), (1, 2), (2, 3)]),
            Pattern::Claw => (4, &[(0, 1), (0, 2), (0, 3)]),
            Pattern::Cycle4 => (4, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
            Pattern::Paw => (4, &[(0, 1), (1, 2), (0, 2), (2, 3)]),
            Pattern::Diamond => (4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]),
            Pattern::K4 => (4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        }
    }
}

/// Non-induced occurrence counts: each subgraph copy of a pattern counts
/// once, whatever other edges its nodes share.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphCensus {
    pub triangle: u64,
    pub path4: u64,
    pub claw: u64,
    pub cycle4: u64,
    pub paw: u64,
    pub diamond: u64,
    pub k4: u64,
}

impl SubgraphCensus {
    pub fn get(&self, p: Pattern) -> u64 {
        match p {
            Pattern::Triangle => self.triangle,
            Pattern::Path4 => self.path4,
            Pattern::Claw => self.claw,
            Pattern::Cycle4 => self.cycle4,
            Pattern::Paw => self.paw,
            Pattern::Diamond => self.diamond,
            Pattern::K4 => self.k4,
        }
    }

    pub fn to_array(&self) -> [u64; 7] {
        Pattern::ALL.map(|p| self.get(p))
    }
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Counts all seven patterns with edge- and wedge-anchored formulas.
pub fn four_node_census(g: &Graph) -> SubgraphCensus {
    let n = g.node_count();
    let per_edge = edge_triangles(g);
    let triangle = per_edge.iter().sum::<u64>() / 3;

    let mut node_triangles = vec![0u64; n];
    let mut path4 = 0u64;
    let mut diamond = 0u64;
    let mut k4 = 0u64;
    let mut common = Vec::new();
    for ((u, v), &t) in g.edges().zip(&per_edge) {
        node_triangles[u] += t;
        node_triangles[v] += t;
        path4 += (g.degree(u) as u64 - 1) * (g.degree(v) as u64 - 1);
        diamond += choose2(t);
        if t >= 2 {
            // K4 {u < v < w < x} is found once, from its lowest edge
            common.clear();
            common.extend(
                g.neighbors(u)
                    .iter()
                    .filter(|&&w| w > v && g.has_edge(v, w))
                    .copied(),
            );
            for (a, &w) in common.iter().enumerate() {
                k4 += common[a + 1..].iter().filter(|&&x| g.has_edge(w, x)).count() as u64;
            }
        }
    }
    path4 -= 3 * triangle;

    let mut claw = 0u64;
    let mut paw = 0u64;
    for v in 0..n {
        let d = g.degree(v) as u64;
        claw += d * d.saturating_sub(1) * d.saturating_sub(2) / 6;
        paw += (node_triangles[v] / 2) * d.saturating_sub(2);
    }

    // each 4-cycle is counted once per diagonal pair
    let mut wedges = vec![0u64; n];
    let mut touched = Vec::new();
    let mut cycle_pairs = 0u64;
    for u in 0..n {
        for &v in g.neighbors(u) {
            for &w in g.neighbors(v) {
                if w > u {
                    if wedges[w] == 0 {
                        touched.push(w);
                    }
                    wedges[w] += 1;
                }
            }
        }
        for &w in &touched {
            cycle_pairs += choose2(wedges[w]);
            wedges[w] = 0;
        }
        touched.clear();
    }
    let cycle4 = cycle_pairs / 2;

    SubgraphCensus {
        triangle,
        path4,
        claw,
        cycle4,
        paw,
        diamond,
        k4,
    }
}
