//! Realizability of core sequences and a constructive witness.

use crate::cores::CoreSequence;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A sequence is the core sequence of some simple graph iff it is empty,
/// its maximum is 0, or at least `c1 + 1` entries equal `c1`.
pub fn is_realizable(c: &CoreSequence) -> bool {
    violated_condition(c).is_none()
}

fn violated_condition(c: &CoreSequence) -> Option<String> {
    let top = c.max();
    if c.is_empty() || top == 0 {
        return None;
    }
    let multiplicity = c.top_core_size();
    (multiplicity < top + 1).then(|| {
        format!(
            "the maximum core value {top} appears {multiplicity} times, \
             but at least {} nodes are needed to give each of them {top} neighbors",
            top + 1
        )
    })
}

/// A `d`-uniform graph on `n` nodes: `d`-regular when `d` is even or `n` is
/// even, otherwise `d`-regular except for one node of degree `d + 1`.
pub fn build_uniform(d: usize, n: usize) -> Result<Graph> {
    if n <= d {
        return Err(Error::TooFewNodes { d, n });
    }
    let mut g = Graph::empty(n);
    let reach = d / 2;
    for i in 0..n {
        for offset in 1..=reach {
            g.add_edge(i, (i + offset) % n);
        }
    }
    if d % 2 == 1 {
        let half = n / 2;
        if n % 2 == 0 {
            // antipodal matching
            for i in 0..half {
                g.add_edge(i, i + half);
            }
        } else {
            // n = 2t + 1 with t > reach: chords of cyclic length t miss the
            // circulant. Match i <-> i + t for i < t, then join the leftover
            // node 2t to t - 1, which becomes the single node of degree d + 1.
            let t = half;
            for i in 0..t {
                g.add_edge(i, i + t);
            }
            g.add_edge(2 * t, t - 1);
        }
    }
    Ok(g)
}

/// Builds a graph whose core sequence is exactly `c`.
///
/// The top core is a `c1`-uniform graph on nodes `0..n1`; every later node
/// `j` is joined to nodes `0..c_j` of the top core. Node `i` ends up with core
/// value `c[i]`.
pub fn realize(c: &CoreSequence) -> Result<Graph> {
    if let Some(reason) = violated_condition(c) {
        return Err(Error::Unrealizable(reason));
    }
    let n = c.len();
    let top = c.max();
    if top == 0 {
        return Ok(Graph::empty(n));
    }
    let n1 = c.top_core_size();
    let core = build_uniform(top, n1)?;
    let mut edges: Vec<(usize, usize)> = core.edges().collect();
    for (j, &cj) in c.as_slice().iter().enumerate().skip(n1) {
        edges.extend((0..cj).map(|h| (h, j)));
    }
    Graph::from_edges(n, edges)
}
