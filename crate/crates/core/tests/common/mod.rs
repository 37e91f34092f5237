#![allow(dead_code)]

use std::collections::HashMap;
use std::hash::Hash;

use corewalk::Graph;

/// Adjacency matrix of `g`.
pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// Core values straight from the definition: the k-core is what survives
/// repeatedly deleting nodes of degree below k, and a node's core value is
/// the largest k whose k-core contains it.
pub fn definitional_cores(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let adj = matrix(g);
    let mut core = vec![0; n];
    for k in 1..n {
        let mut alive = vec![true; n];
        loop {
            let doomed: Vec<usize> = (0..n)
                .filter(|&v| alive[v] && (0..n).filter(|&w| alive[w] && adj[v][w]).count() < k)
                .collect();
            if doomed.is_empty() {
                break;
            }
            for v in doomed {
                alive[v] = false;
            }
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
    }
    core
}

pub fn sorted_desc(mut values: Vec<usize>) -> Vec<usize> {
    values.sort_unstable_by(|a, b| b.cmp(a));
    values
}

/// All simple graphs on `n` nodes.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(t, _)| mask >> t & 1 == 1).map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

/// Total variation distance between the empirical distribution of `tally`
/// and the uniform distribution on `states` outcomes.
pub fn tv_from_uniform<K: Eq + Hash>(tally: &HashMap<K, u64>, states: usize) -> f64 {
    let total: u64 = tally.values().sum();
    let u = 1.0 / states as f64;
    let seen: f64 = tally.values().map(|&c| (c as f64 / total as f64 - u).abs()).sum();
    let unseen = (states - tally.len()) as f64 * u;
    0.5 * (seen + unseen)
}

pub fn edge_key(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}
