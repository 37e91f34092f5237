//! Position-indexed edge set for uniform edge selection under mutation.

use std::collections::HashMap;

use crate::graph::Graph;

/// Edges of a graph stored as `(u, v)` with `u < v` in a dense vector, plus a
/// reverse map for O(1) removal. Order is a deterministic function of the
/// history of insertions and removals.
#[derive(Debug, Clone, Default)]
pub(crate) struct EdgeIndex {
    edges: Vec<(usize, usize)>,
    position: HashMap<(usize, usize), usize>,
}

#[inline]
fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl EdgeIndex {
    pub(crate) fn from_graph(g: &Graph) -> Self {
        let edges: Vec<_> = g.edges().collect();
        let position = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        EdgeIndex { edges, position }
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub(crate) fn get(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    pub(crate) fn position_of(&self, u: usize, v: usize) -> Option<usize> {
        self.position.get(&key(u, v)).copied()
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        let e = key(u, v);
        let previous = self.position.insert(e, self.edges.len());
        debug_assert!(previous.is_none());
        self.edges.push(e);
    }

    pub(crate) fn remove(&mut self, u: usize, v: usize) {
        let e = key(u, v);
        let idx = self.position.remove(&e).expect("edge present in index");
        self.edges.swap_remove(idx);
        if idx < self.edges.len() {
            self.position.insert(self.edges[idx], idx);
        }
    }
}
