//! Exact sampler for core sequences with maximum 1.
//!
//! Such graphs are forests whose trees all have at least two nodes, plus
//! isolated core-0 nodes. We pick the size of the tree holding the lowest
//! unplaced node with its exact share of the count, pick its other members
//! uniformly, and draw a uniform labeled tree from a Prüfer sequence.

use std::collections::BinaryHeap;
use std::cmp::Reverse;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;

use crate::cores::CoreSequence;
use crate::error::{Error, Result};
use crate::graph::Graph;

fn binomial_table(k: usize) -> Vec<Vec<BigUint>> {
    let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(k + 1);
    for n in 0..=k {
        let mut row = vec![BigUint::one(); n + 1];
        for r in 1..n {
            row[r] = &table[n - 1][r - 1] + &table[n - 1][r];
        }
        table.push(row);
    }
    table
}

fn cayley(s: usize) -> BigUint {
    if s <= 2 {
        BigUint::one()
    } else {
        BigUint::from(s).pow((s - 2) as u32)
    }
}

/// `F(0..=k)`, where `F(r)` counts labeled forests on `r` nodes whose trees
/// all have at least two nodes.
pub fn forest_counts(k: usize) -> Vec<BigUint> {
    let binom = binomial_table(k.saturating_sub(1));
    let mut f = vec![BigUint::zero(); k + 1];
    f[0] = BigUint::one();
    for r in 2..=k {
        let mut total = BigUint::zero();
        for s in 2..=r {
            total += &binom[r - 1][s - 1] * cayley(s) * &f[r - s];
        }
        f[r] = total;
    }
    f
}

/// Number of labeled forests on `k` nodes with no isolated node.
pub fn forest_count(k: usize) -> BigUint {
    forest_counts(k).pop().expect("table has k + 1 entries")
}

/// Uniform labeled tree on `labels` via a uniform Prüfer sequence.
fn random_tree<R: Rng + ?Sized>(labels: &[usize], rng: &mut R, edges: &mut Vec<(usize, usize)>) {
    let s = labels.len();
    if s < 2 {
        return;
    }
    if s == 2 {
        edges.push((labels[0], labels[1]));
        return;
    }
    let code: Vec<usize> = (0..s - 2).map(|_| rng.gen_range(0..s)).collect();
    let mut degree = vec![1usize; s];
    for &x in &code {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..s).filter(|&v| degree[v] == 1).map(Reverse).collect();
    for &x in &code {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer step always has a leaf");
        edges.push((labels[leaf], labels[x]));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((labels[a], labels[b]));
}

/// Draws a graph uniformly from all graphs in which node `v` has core value
/// `c[v]`, for a sequence with maximum at most 1.
pub fn sample_forest_core1<R: Rng + ?Sized>(c: &CoreSequence, rng: &mut R) -> Result<Graph> {
    if c.max() > 1 {
        return Err(Error::InvalidInput(format!(
            "forest sampler needs a maximum core value of at most 1, got {}",
            c.max()
        )));
    }
    let n = c.len();
    let k = c.as_slice().iter().filter(|&&x| x == 1).count();
    if k == 1 {
        return Err(Error::Unrealizable(
            "a single node of core value 1 has no partner".into(),
        ));
    }

    let counts = forest_counts(k);
    let binom = binomial_table(k.saturating_sub(1));
    let mut remaining: Vec<usize> = (0..k).collect();
    let mut edges = Vec::with_capacity(k);
    let mut component = Vec::new();
    while !remaining.is_empty() {
        let r = remaining.len();
        let mut draw = rng.gen_biguint_below(&counts[r]);
        let mut size = r;
        for s in 2..=r {
            let weight = &binom[r - 1][s - 1] * cayley(s) * &counts[r - s];
            if draw < weight {
                size = s;
                break;
            }
            draw -= weight;
        }

        let lowest = remaining[0];
        let others = rand::seq::index::sample(rng, r - 1, size - 1);
        let mut picked: Vec<usize> = others.iter().map(|t| t + 1).collect();
        picked.sort_unstable();
        component.clear();
        component.push(lowest);
        component.extend(picked.iter().map(|&t| remaining[t]));
        random_tree(&component, rng, &mut edges);

        let mut take = picked.into_iter().peekable();
        let mut next = Vec::with_capacity(r - size);
        for (t, &v) in remaining.iter().enumerate().skip(1) {
            if take.peek() == Some(&t) {
                take.next();
            } else {
                next.push(v);
            }
        }
        remaining = next;
    }
    Graph::from_edges(n, edges)
}
