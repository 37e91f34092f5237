//! Labeled undirected simple graphs over node ids `0..n`.

use std::fmt;

use crate::error::{Error, Result};

/// An undirected simple graph with sorted adjacency lists.
///
/// Nodes are the integers `0..n`. Each neighbor list is kept sorted so that
/// membership is a binary search and iteration order is deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph on `n` nodes with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate pairs, in either
    /// orientation, collapse to a single edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        let mut half_edges = 0;
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
            half_edges += list.len();
        }
        g.m = half_edges / 2;
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Inserts `{u, v}`. Returns `false` if the edge was already present.
    ///
    /// Panics on a self-loop or an out-of-range id.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert_ne!(u, v, "self-loops are not allowed");
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                true
            }
        }
    }

    /// Removes `{u, v}`. Returns `false` if the edge was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).expect("adjacency is symmetric");
                self.adj[v].remove(pos);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Per-node degrees, indexed by node id.
    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Degrees sorted non-increasingly.
    pub fn sorted_degree_sequence(&self) -> Vec<usize> {
        let mut degrees = self.degree_sequence();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        degrees
    }

    /// Returns the graph with node `v` renamed to `new_id[v]`.
    ///
    /// `new_id` must be a permutation of `0..n`.
    pub fn permuted(&self, new_id: &[usize]) -> Graph {
        assert_eq!(new_id.len(), self.node_count());
        let mut adj = vec![Vec::new(); self.node_count()];
        for (v, list) in self.adj.iter().enumerate() {
            let target = &mut adj[new_id[v]];
            target.extend(list.iter().map(|&u| new_id[u]));
            target.sort_unstable();
        }
        Graph { adj, m: self.m }
    }

    /// Checks the simple-graph invariants. Used by tests and debug assertions.
    pub fn is_consistent(&self) -> bool {
        let mut half_edges = 0;
        for (v, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &u in list {
                if u == v || u >= self.node_count() || self.adj[u].binary_search(&v).is_err() {
                    return false;
                }
            }
            half_edges += list.len();
        }
        half_edges == 2 * self.m
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.node_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}
