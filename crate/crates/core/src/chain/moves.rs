//! Move types, proposal universes and the slot encoding.
//!
//! Every move kind owns a universe of candidate encodings. The universes are
//! laid out back to back in a fixed order, and a proposal slot either falls
//! inside one of them or into the self-loop padding behind them. Each valid
//! move has exactly one encoding, and its inverse has exactly one encoding in
//! the graph it produces, so every valid transition is proposed with the same
//! probability as its reverse.

use serde::{Deserialize, Serialize};

/// The families of core-preserving rewirings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Add,
    Delete,
    MoveEndpoint,
    CoreCollapse,
    CoreExpand,
    HalfCollapse,
    HalfExpand,
    SwitchTopCore,
}

impl MoveKind {
    pub const ALL: [MoveKind; 8] = [
        MoveKind::Add,
        MoveKind::Delete,
        MoveKind::MoveEndpoint,
        MoveKind::CoreCollapse,
        MoveKind::CoreExpand,
        MoveKind::HalfCollapse,
        MoveKind::HalfExpand,
        MoveKind::SwitchTopCore,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::Add => "add",
            MoveKind::Delete => "delete",
            MoveKind::MoveEndpoint => "move_endpoint",
            MoveKind::CoreCollapse => "core_collapse",
            MoveKind::CoreExpand => "core_expand",
            MoveKind::HalfCollapse => "half_collapse",
            MoveKind::HalfExpand => "half_expand",
            MoveKind::SwitchTopCore => "switch_top_core",
        }
    }
}

/// One proposed transition.
///
/// Node roles follow the move definitions:
/// * `MoveEndpoint { h, i, j }` deletes `(h, j)` and inserts `(i, j)`.
/// * `CoreCollapse { h, i, j }` deletes `(h, i)`, `(h, j)` and inserts `(i, j)`;
///   `CoreExpand` is the reverse.
/// * `HalfCollapse { h, i, j }` deletes `(h, i)` and inserts `(i, j)`;
///   `HalfExpand` is the reverse.
/// * `SwitchTopCore { h, i, j, l }` replaces `(h, i)`, `(j, l)` with `(h, j)`, `(i, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Add(usize, usize),
    Delete(usize, usize),
    MoveEndpoint { h: usize, i: usize, j: usize },
    CoreCollapse { h: usize, i: usize, j: usize },
    CoreExpand { h: usize, i: usize, j: usize },
    HalfCollapse { h: usize, i: usize, j: usize },
    HalfExpand { h: usize, i: usize, j: usize },
    SwitchTopCore { h: usize, i: usize, j: usize, l: usize },
}

/// Edges removed and inserted by a move (at most two of each).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeEdits {
    removed: [(usize, usize); 2],
    n_removed: usize,
    added: [(usize, usize); 2],
    n_added: usize,
}

impl EdgeEdits {
    fn new(removed: &[(usize, usize)], added: &[(usize, usize)]) -> Self {
        let mut edits = EdgeEdits {
            removed: [(0, 0); 2],
            n_removed: removed.len(),
            added: [(0, 0); 2],
            n_added: added.len(),
        };
        edits.removed[..removed.len()].copy_from_slice(removed);
        edits.added[..added.len()].copy_from_slice(added);
        edits
    }

    pub fn removed(&self) -> &[(usize, usize)] {
        &self.removed[..self.n_removed]
    }

    pub fn added(&self) -> &[(usize, usize)] {
        &self.added[..self.n_added]
    }
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::Add(..) => MoveKind::Add,
            Move::Delete(..) => MoveKind::Delete,
            Move::MoveEndpoint { .. } => MoveKind::MoveEndpoint,
            Move::CoreCollapse { .. } => MoveKind::CoreCollapse,
            Move::CoreExpand { .. } => MoveKind::CoreExpand,
            Move::HalfCollapse { .. } => MoveKind::HalfCollapse,
            Move::HalfExpand { .. } => MoveKind::HalfExpand,
            Move::SwitchTopCore { .. } => MoveKind::SwitchTopCore,
        }
    }

    /// The move that undoes this one.
    pub fn inverse(&self) -> Move {
        match *self {
            Move::Add(u, v) => Move::Delete(u, v),
            Move::Delete(u, v) => Move::Add(u, v),
            Move::MoveEndpoint { h, i, j } => Move::MoveEndpoint { h: i, i: h, j },
            Move::CoreCollapse { h, i, j } => Move::CoreExpand { h, i, j },
            Move::CoreExpand { h, i, j } => Move::CoreCollapse { h, i, j },
            Move::HalfCollapse { h, i, j } => Move::HalfExpand { h, i, j },
            Move::HalfExpand { h, i, j } => Move::HalfCollapse { h, i, j },
            Move::SwitchTopCore { h, i, j, l } => Move::SwitchTopCore { h, i: j, j: i, l },
        }
    }

    pub fn edits(&self) -> EdgeEdits {
        match *self {
            Move::Add(u, v) => EdgeEdits::new(&[], &[(u, v)]),
            Move::Delete(u, v) => EdgeEdits::new(&[(u, v)], &[]),
            Move::MoveEndpoint { h, i, j } => EdgeEdits::new(&[(h, j)], &[(i, j)]),
            Move::CoreCollapse { h, i, j } => EdgeEdits::new(&[(h, i), (h, j)], &[(i, j)]),
            Move::CoreExpand { h, i, j } => EdgeEdits::new(&[(i, j)], &[(h, i), (h, j)]),
            Move::HalfCollapse { h, i, j } => EdgeEdits::new(&[(h, i)], &[(i, j)]),
            Move::HalfExpand { h, i, j } => EdgeEdits::new(&[(i, j)], &[(h, i)]),
            Move::SwitchTopCore { h, i, j, l } => {
                EdgeEdits::new(&[(h, i), (j, l)], &[(h, j), (i, l)])
            }
        }
    }

    pub fn nodes(&self) -> Vec<usize> {
        match *self {
            Move::Add(u, v) | Move::Delete(u, v) => vec![u, v],
            Move::MoveEndpoint { h, i, j }
            | Move::CoreCollapse { h, i, j }
            | Move::CoreExpand { h, i, j }
            | Move::HalfCollapse { h, i, j }
            | Move::HalfExpand { h, i, j } => vec![h, i, j],
            Move::SwitchTopCore { h, i, j, l } => vec![h, i, j, l],
        }
    }
}

/// What a proposal slot decodes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Candidate {
    Move(Move),
    SelfLoop,
}

/// The candidate universes, in slot order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Universe {
    /// Unordered pairs, proposing an insertion.
    Add,
    /// Unordered pairs, proposing a deletion.
    Delete,
    /// (edge, endpoint that stays, new partner).
    MoveEndpoint,
    /// (h, {i, j}) shared by collapse and expand.
    CollapseExpand,
    /// Ordered (h, i, j) shared by the two half-moves.
    Half,
    /// Top-core 4-sets with an ordered pair of distinct pairings.
    Switch,
}

impl Universe {
    pub const ORDER: [Universe; 6] = [
        Universe::Add,
        Universe::Delete,
        Universe::MoveEndpoint,
        Universe::CollapseExpand,
        Universe::Half,
        Universe::Switch,
    ];
}

/// Shape parameters that determine universe sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniverseShape {
    pub n: usize,
    pub m: usize,
    pub top_core_size: usize,
    pub switch_enabled: bool,
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

impl UniverseShape {
    pub fn size(&self, universe: Universe) -> u64 {
        let n = self.n as u64;
        let m = self.m as u64;
        match universe {
            Universe::Add | Universe::Delete => binomial(n, 2),
            Universe::MoveEndpoint => 2 * m * n.saturating_sub(2),
            Universe::CollapseExpand => n * binomial(n.saturating_sub(1), 2),
            Universe::Half => n * n.saturating_sub(1) * n.saturating_sub(2),
            Universe::Switch => {
                if self.switch_enabled {
                    6 * binomial(self.top_core_size as u64, 4)
                } else {
                    0
                }
            }
        }
    }

    /// Total number of non-padding slots.
    pub fn total(&self) -> u64 {
        Universe::ORDER.iter().map(|&u| self.size(u)).sum()
    }
}

/// Lexicographic rank of the pair `(i, j)`, `i < j < n`.
#[inline]
pub(crate) fn rank_pair(i: usize, j: usize, n: usize) -> u64 {
    let (i, j, n) = (i as u64, j as u64, n as u64);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Inverse of [`rank_pair`].
#[inline]
pub(crate) fn unrank_pair(rank: u64, n: usize) -> (usize, usize) {
    let nn = n as u64;
    let offset = |i: u64| i * (2 * nn - i - 1) / 2;
    let b = (2 * nn - 1) as f64;
    let mut i = ((b - (b * b - 8.0 * rank as f64).max(0.0).sqrt()) / 2.0).floor() as u64;
    i = i.min(nn.saturating_sub(2));
    while i > 0 && offset(i) > rank {
        i -= 1;
    }
    while i + 1 < nn && offset(i + 1) <= rank {
        i += 1;
    }
    let j = i + 1 + (rank - offset(i));
    (i as usize, j as usize)
}

/// The `k`-th node of `0..n` after skipping the sorted ids in `skip`.
#[inline]
fn nth_skipping(mut k: usize, skip: &[usize]) -> usize {
    for &s in skip {
        if k >= s {
            k += 1;
        }
    }
    k
}

/// Number of ids in `skip` that are smaller than `v`.
#[inline]
fn count_below(v: usize, skip: &[usize]) -> usize {
    skip.iter().filter(|&&s| s < v).count()
}

/// Colex rank of a sorted 4-set.
fn rank_quad(q: [usize; 4]) -> u64 {
    (0..4).map(|t| binomial(q[t] as u64, t as u64 + 1)).sum()
}

fn unrank_quad(mut rank: u64, n: usize) -> [usize; 4] {
    let mut out = [0; 4];
    let mut upper = n;
    for t in (0..4).rev() {
        let k = t as u64 + 1;
        // largest x < upper with C(x, k) <= rank
        let mut lo = t;
        let mut hi = upper;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if binomial(mid as u64, k) <= rank {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out[t] = lo;
        rank -= binomial(lo as u64, k);
        upper = lo;
    }
    out
}

const PAIRINGS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
const DIRECTIONS: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

fn switch_from_code(quad: [usize; 4], direction: usize) -> Move {
    let (from, to) = DIRECTIONS[direction];
    let [(p, q), (r, s)] = PAIRINGS[from].map(|(a, b)| (quad[a], quad[b]));
    // the target pairing joins p to either r or s
    let p_partner = PAIRINGS[to]
        .iter()
        .map(|&(a, b)| (quad[a], quad[b]))
        .find_map(|(a, b)| match (a == p, b == p) {
            (true, _) => Some(b),
            (_, true) => Some(a),
            _ => None,
        })
        .expect("every pairing covers p");
    if p_partner == r {
        Move::SwitchTopCore { h: p, i: q, j: r, l: s }
    } else {
        Move::SwitchTopCore { h: p, i: q, j: s, l: r }
    }
}

fn pairing_index(quad: &[usize; 4], a: usize, b: usize) -> Option<usize> {
    let pos = |x: usize| quad.iter().position(|&y| y == x);
    let (pa, pb) = (pos(a)?, pos(b)?);
    let (lo, hi) = (pa.min(pb), pa.max(pb));
    PAIRINGS
        .iter()
        .position(|pairing| pairing.contains(&(lo, hi)))
}

/// Edge-state oracle used when decoding shared universes.
pub(crate) trait EdgeOracle {
    fn has_edge(&self, u: usize, v: usize) -> bool;
    fn edge_at(&self, index: usize) -> (usize, usize);
    fn edge_position(&self, u: usize, v: usize) -> Option<usize>;
}

/// Decodes `code` within `universe`. The caller guarantees
/// `code < shape.size(universe)`.
pub(crate) fn decode_in<G: EdgeOracle>(
    g: &G,
    shape: &UniverseShape,
    universe: Universe,
    code: u64,
) -> Move {
    let n = shape.n;
    match universe {
        Universe::Add => {
            let (i, j) = unrank_pair(code, n);
            Move::Add(i, j)
        }
        Universe::Delete => {
            let (i, j) = unrank_pair(code, n);
            Move::Delete(i, j)
        }
        Universe::MoveEndpoint => {
            let per_edge = 2 * (n as u64 - 2);
            let edge = (code / per_edge) as usize;
            let rest = code % per_edge;
            let (a, b) = g.edge_at(edge);
            let (h, j) = if rest < n as u64 - 2 { (a, b) } else { (b, a) };
            let k = (rest % (n as u64 - 2)) as usize;
            let skip = if h < j { [h, j] } else { [j, h] };
            let i = nth_skipping(k, &skip);
            Move::MoveEndpoint { h, i, j }
        }
        Universe::CollapseExpand => {
            let per_hub = binomial(n as u64 - 1, 2);
            let h = (code / per_hub) as usize;
            let (a, b) = unrank_pair(code % per_hub, n - 1);
            let (i, j) = (nth_skipping(a, &[h]), nth_skipping(b, &[h]));
            if g.has_edge(i, j) && !g.has_edge(h, i) && !g.has_edge(h, j) {
                Move::CoreExpand { h, i, j }
            } else {
                Move::CoreCollapse { h, i, j }
            }
        }
        Universe::Half => {
            let per_hub = (n as u64 - 1) * (n as u64 - 2);
            let h = (code / per_hub) as usize;
            let rest = code % per_hub;
            let i = nth_skipping((rest / (n as u64 - 2)) as usize, &[h]);
            let skip = if h < i { [h, i] } else { [i, h] };
            let j = nth_skipping((rest % (n as u64 - 2)) as usize, &skip);
            if g.has_edge(i, j) && !g.has_edge(h, i) {
                Move::HalfExpand { h, i, j }
            } else {
                Move::HalfCollapse { h, i, j }
            }
        }
        Universe::Switch => {
            let quad = unrank_quad(code / 6, shape.top_core_size);
            switch_from_code(quad, (code % 6) as usize)
        }
    }
}

/// The universe and in-universe code of `mv`, if it has one in the current
/// graph.
pub(crate) fn encode_in<G: EdgeOracle>(
    g: &G,
    shape: &UniverseShape,
    mv: &Move,
) -> Option<(Universe, u64)> {
    let n = shape.n;
    let distinct = {
        let mut nodes = mv.nodes();
        let len = nodes.len();
        nodes.sort_unstable();
        nodes.dedup();
        nodes.len() == len && nodes.iter().all(|&v| v < n)
    };
    if !distinct {
        return None;
    }
    match *mv {
        Move::Add(u, v) | Move::Delete(u, v) => {
            let universe = if mv.kind() == MoveKind::Add {
                Universe::Add
            } else {
                Universe::Delete
            };
            Some((universe, rank_pair(u.min(v), u.max(v), n)))
        }
        Move::MoveEndpoint { h, i, j } => {
            let edge = g.edge_position(h, j)?;
            let (a, _) = g.edge_at(edge);
            let side = if a == h { 0 } else { 1 };
            let skip = if h < j { [h, j] } else { [j, h] };
            let k = i - count_below(i, &skip);
            let per_edge = 2 * (n as u64 - 2);
            Some((
                Universe::MoveEndpoint,
                edge as u64 * per_edge + side * (n as u64 - 2) + k as u64,
            ))
        }
        Move::CoreCollapse { h, i, j } | Move::CoreExpand { h, i, j } => {
            let (i, j) = (i.min(j), i.max(j));
            let a = i - count_below(i, &[h]);
            let b = j - count_below(j, &[h]);
            let per_hub = binomial(n as u64 - 1, 2);
            Some((
                Universe::CollapseExpand,
                h as u64 * per_hub + rank_pair(a, b, n - 1),
            ))
        }
        Move::HalfCollapse { h, i, j } | Move::HalfExpand { h, i, j } => {
            let a = i - count_below(i, &[h]);
            let skip = if h < i { [h, i] } else { [i, h] };
            let b = j - count_below(j, &skip);
            let per_hub = (n as u64 - 1) * (n as u64 - 2);
            Some((
                Universe::Half,
                h as u64 * per_hub + a as u64 * (n as u64 - 2) + b as u64,
            ))
        }
        Move::SwitchTopCore { h, i, j, l } => {
            if !shape.switch_enabled || [h, i, j, l].iter().any(|&v| v >= shape.top_core_size) {
                return None;
            }
            let mut quad = [h, i, j, l];
            quad.sort_unstable();
            let from = pairing_index(&quad, h, i)?;
            let to = pairing_index(&quad, h, j)?;
            let direction = DIRECTIONS.iter().position(|&d| d == (from, to))?;
            Some((Universe::Switch, rank_quad(quad) * 6 + direction as u64))
        }
    }
}
