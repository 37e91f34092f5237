//! Core decomposition by peeling, core sequences and core-sorted relabeling.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A non-increasing sequence of core values `c1 >= c2 >= ... >= cn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct CoreSequence(Vec<usize>);

impl CoreSequence {
    /// Wraps `values`, rejecting sequences that are not non-increasing.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if let Some(i) = values.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "core sequence must be non-increasing: position {} holds {} but position {} holds {}",
                i,
                values[i],
                i + 1,
                values[i + 1]
            )));
        }
        Ok(CoreSequence(values))
    }

    /// Sorts `values` non-increasingly. The flag reports whether any
    /// reordering was needed.
    pub fn from_unsorted(mut values: Vec<usize>) -> (Self, bool) {
        let already = values.windows(2).all(|w| w[0] >= w[1]);
        if !already {
            values.sort_unstable_by(|a, b| b.cmp(a));
        }
        (CoreSequence(values), !already)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest core value, or 0 for the empty sequence.
    pub fn max(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Number of entries equal to the maximum.
    pub fn top_core_size(&self) -> usize {
        let top = self.max();
        self.0.iter().take_while(|&&c| c == top).count()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl TryFrom<Vec<usize>> for CoreSequence {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        CoreSequence::new(values)
    }
}

impl From<CoreSequence> for Vec<usize> {
    fn from(seq: CoreSequence) -> Self {
        seq.0
    }
}

impl std::fmt::Display for CoreSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for c in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// Result of peeling a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    /// Core value of each node.
    pub core_of: Vec<usize>,
    /// Number of nodes whose core value equals `max_core`.
    pub top_core_size: usize,
    /// Nodes in the order they were peeled.
    pub deletion_order: Vec<usize>,
    pub max_core: usize,
}

impl CoreDecomposition {
    /// The core values sorted non-increasingly.
    pub fn sequence(&self) -> CoreSequence {
        CoreSequence::from_unsorted(self.core_of.clone()).0
    }
}

/// Peels `g` with a bucket queue keyed by residual degree, always removing
/// the smallest node id among those of minimum residual degree.
pub fn core_decomposition(g: &Graph) -> CoreDecomposition {
    let n = g.node_count();
    let mut degree = g.degree_sequence();
    let max_degree = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); max_degree + 1];
    for (v, &d) in degree.iter().enumerate() {
        buckets[d].insert(v);
    }

    let mut removed = vec![false; n];
    let mut core_of = vec![0; n];
    let mut deletion_order = Vec::with_capacity(n);
    let mut level = 0;
    let mut cursor = 0;
    while deletion_order.len() < n {
        while buckets[cursor].is_empty() {
            cursor += 1;
        }
        let v = buckets[cursor].pop_first().expect("bucket is non-empty");
        level = level.max(cursor);
        core_of[v] = level;
        removed[v] = true;
        deletion_order.push(v);
        for &u in g.neighbors(v) {
            if removed[u] {
                continue;
            }
            let d = degree[u];
            buckets[d].remove(&u);
            buckets[d - 1].insert(u);
            degree[u] = d - 1;
            cursor = cursor.min(d - 1);
        }
    }

    let max_core = core_of.iter().copied().max().unwrap_or(0);
    let top_core_size = core_of.iter().filter(|&&c| c == max_core).count();
    CoreDecomposition {
        core_of,
        top_core_size,
        deletion_order,
        max_core,
    }
}

/// Reusable buffers for the linear-time bin-sort peeling used on hot paths.
#[derive(Debug, Default, Clone)]
pub struct CorePeeler {
    degree: Vec<usize>,
    bin: Vec<usize>,
    pos: Vec<usize>,
    vert: Vec<usize>,
}

impl CorePeeler {
    pub fn new() -> Self {
        Self::default()
    }

    /// Core value of every node of `g`. The returned slice is valid until the
    /// next call.
    pub fn core_numbers(&mut self, g: &Graph) -> &[usize] {
        let n = g.node_count();
        let degree = &mut self.degree;
        degree.clear();
        degree.extend((0..n).map(|v| g.degree(v)));
        let max_degree = degree.iter().copied().max().unwrap_or(0);

        let bin = &mut self.bin;
        bin.clear();
        bin.resize(max_degree + 1, 0);
        for &d in degree.iter() {
            bin[d] += 1;
        }
        let mut start = 0;
        for slot in bin.iter_mut() {
            let count = *slot;
            *slot = start;
            start += count;
        }

        let pos = &mut self.pos;
        let vert = &mut self.vert;
        pos.clear();
        pos.resize(n, 0);
        vert.clear();
        vert.resize(n, 0);
        for v in 0..n {
            let d = degree[v];
            pos[v] = bin[d];
            vert[bin[d]] = v;
            bin[d] += 1;
        }
        for d in (1..=max_degree).rev() {
            bin[d] = bin[d - 1];
        }
        if !bin.is_empty() {
            bin[0] = 0;
        }

        for i in 0..n {
            let v = vert[i];
            for &u in g.neighbors(v) {
                if degree[u] > degree[v] {
                    let du = degree[u];
                    let pu = pos[u];
                    let pw = bin[du];
                    let w = vert[pw];
                    if u != w {
                        pos[u] = pw;
                        vert[pu] = w;
                        pos[w] = pu;
                        vert[pw] = u;
                    }
                    bin[du] += 1;
                    degree[u] -= 1;
                }
            }
        }
        &self.degree
    }
}

/// Bijection between the ids of an input graph and core-sorted internal ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelMap {
    /// `to_internal[original] = internal`.
    pub to_internal: Vec<usize>,
    /// `to_original[internal] = original`.
    pub to_original: Vec<usize>,
}

impl LabelMap {
    pub fn identity(n: usize) -> Self {
        LabelMap {
            to_internal: (0..n).collect(),
            to_original: (0..n).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.to_original.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// Renames nodes so that core values are non-increasing in internal id.
/// Ties keep their original relative order, so an already sorted graph maps
/// to itself. The order `n-1, ..., 0` is then a core deletion order.
pub fn relabel_by_core(g: &Graph) -> (Graph, LabelMap) {
    let decomposition = core_decomposition(g);
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| decomposition.core_of[b].cmp(&decomposition.core_of[a]));
    let mut to_internal = vec![0; order.len()];
    for (internal, &original) in order.iter().enumerate() {
        to_internal[original] = internal;
    }
    let relabeled = g.permuted(&to_internal);
    (
        relabeled,
        LabelMap {
            to_internal,
            to_original: order,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pendant_k4() -> Graph {
        let mut edges: Vec<_> = Graph::complete(4).edges().collect();
        edges.push((0, 4));
        Graph::from_edges(5, edges).unwrap()
    }

    #[test]
    fn small_decompositions() {
        let tri = Graph::complete(3);
        assert_eq!(core_decomposition(&tri).core_of, vec![2, 2, 2]);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(core_decomposition(&path).core_of, vec![1, 1, 1]);
        let d = core_decomposition(&pendant_k4());
        assert_eq!(d.core_of, vec![3, 3, 3, 3, 1]);
        assert_eq!(d.max_core, 3);
        assert_eq!(d.top_core_size, 4);
        assert_eq!(d.deletion_order, vec![4, 0, 1, 2, 3]);
        assert_eq!(d.sequence().as_slice(), &[3, 3, 3, 3, 1]);
    }

    #[test]
    fn isolated_nodes_get_core_zero() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert_eq!(core_decomposition(&g).core_of, vec![1, 1, 0, 0]);
        assert_eq!(CorePeeler::new().core_numbers(&g), &[1, 1, 0, 0]);
    }

    #[test]
    fn bin_sort_peeler_agrees() {
        let mut peeler = CorePeeler::new();
        assert_eq!(peeler.core_numbers(&pendant_k4()), &[3, 3, 3, 3, 1]);
        assert_eq!(peeler.core_numbers(&Graph::empty(0)), &[] as &[usize]);
        assert_eq!(peeler.core_numbers(&Graph::complete(5)), &[4; 5]);
    }

    #[test]
    fn pendant_gets_largest_internal_id() {
        // Pendant labelled 0, K4 on 1..=4.
        let mut edges: Vec<_> = Graph::complete(4)
            .edges()
            .map(|(u, v)| (u + 1, v + 1))
            .collect();
        edges.push((0, 1));
        let g = Graph::from_edges(5, edges).unwrap();
        let (relabeled, map) = relabel_by_core(&g);
        assert_eq!(map.to_internal[0], 4);
        assert_eq!(core_decomposition(&relabeled).core_of, vec![3, 3, 3, 3, 1]);
    }

    #[test]
    fn sorted_graph_relabels_to_identity() {
        let (relabeled, map) = relabel_by_core(&pendant_k4());
        assert!(map.is_identity());
        assert_eq!(relabeled, pendant_k4());
    }

    #[test]
    fn core_sequence_validation() {
        assert!(CoreSequence::new(vec![3, 3, 1]).is_ok());
        assert!(CoreSequence::new(vec![1, 3]).is_err());
        let (seq, reordered) = CoreSequence::from_unsorted(vec![1, 3, 3, 3, 3]);
        assert!(reordered);
        assert_eq!(seq.as_slice(), &[3, 3, 3, 3, 1]);
        assert_eq!(seq.top_core_size(), 4);
        assert_eq!(seq.to_string(), "3 3 3 3 1");
        assert!(serde_json::from_str::<CoreSequence>("[1,2]").is_err());
    }
}
