//! Brute-force enumeration of small labeled state spaces.

use std::collections::BTreeSet;

use crate::cores::CoreSequence;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest node count accepted by the enumerators (2^21 edge subsets).
pub const MAX_ENUMERATION_NODES: usize = 7;

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_NODES {
        return Err(Error::EnumerationTooLarge {
            n,
            max: MAX_ENUMERATION_NODES,
        });
    }
    Ok(())
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Core values of a graph on at most 8 nodes given as neighbor bitmasks.
/// Peels a minimum residual-degree node at each step.
fn bitmask_cores(adj: &[u8], cores: &mut [usize]) {
    let n = adj.len();
    let mut alive: u8 = if n == 8 { u8::MAX } else { (1u8 << n) - 1 };
    let mut level = 0;
    while alive != 0 {
        let mut best = usize::MAX;
        let mut best_degree = u32::MAX;
        for v in 0..n {
            if alive >> v & 1 == 1 {
                let d = (adj[v] & alive).count_ones();
                if d < best_degree {
                    best = v;
                    best_degree = d;
                }
            }
        }
        level = level.max(best_degree as usize);
        cores[best] = level;
        alive &= !(1 << best);
    }
}

/// Calls `visit(mask, cores)` for every labeled graph on `n` nodes; bit `t`
/// of `mask` selects the `t`-th lexicographic pair.
fn for_each_graph(n: usize, mut visit: impl FnMut(u32, &[usize])) {
    let all = pairs(n);
    let mut adj = vec![0u8; n];
    let mut cores = vec![0usize; n];
    for mask in 0u32..(1u32 << all.len()) {
        adj.iter_mut().for_each(|a| *a = 0);
        for (t, &(u, v)) in all.iter().enumerate() {
            if mask >> t & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        bitmask_cores(&adj, &mut cores);
        visit(mask, &cores);
    }
}

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let edges = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(t, _)| mask >> t & 1 == 1)
        .map(|(_, e)| e);
    Graph::from_edges(n, edges).expect("pairs are valid")
}

/// All labeled simple graphs on `c.len()` nodes whose sorted core values
/// equal `c`.
pub fn enumerate_core_space(c: &CoreSequence) -> Result<Vec<Graph>> {
    let n = c.len();
    check_size(n)?;
    let mut sorted = vec![0; n];
    let mut out = Vec::new();
    for_each_graph(n, |mask, cores| {
        sorted.copy_from_slice(cores);
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        if sorted == c.as_slice() {
            out.push(graph_from_mask(n, mask));
        }
    });
    Ok(out)
}

/// All labeled simple graphs in which node `v` has core value `core_of[v]`.
pub fn enumerate_labeled_core_space(core_of: &[usize]) -> Result<Vec<Graph>> {
    let n = core_of.len();
    check_size(n)?;
    let mut out = Vec::new();
    for_each_graph(n, |mask, cores| {
        if cores == core_of {
            out.push(graph_from_mask(n, mask));
        }
    });
    Ok(out)
}

/// Every sorted core sequence realized by some graph on `n` nodes.
pub fn realized_core_sequences(n: usize) -> Result<BTreeSet<Vec<usize>>> {
    check_size(n)?;
    let mut seen = BTreeSet::new();
    let mut sorted = vec![0; n];
    for_each_graph(n, |_, cores| {
        sorted.copy_from_slice(cores);
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        if !seen.contains(&sorted) {
            seen.insert(sorted.clone());
        }
    });
    Ok(seen)
}
