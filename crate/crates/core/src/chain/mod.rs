//! The Markov chain on graphs with a fixed core sequence.
//!
//! A step draws one of `2 * delta_hat` slots uniformly. Slots below the total
//! universe size decode to a candidate move; the rest, and every candidate
//! that fails validation, leave the graph unchanged. Validation recomputes
//! all core values, so a move is legal exactly when every node keeps its core
//! value. Since each legal move and its inverse occupy one slot each, the
//! chain is symmetric and its stationary distribution is uniform on every
//! connected class of states.

mod forest;
mod moves;
mod sampler;
mod state;

pub use forest::{forest_count, forest_counts, sample_forest_core1};
pub use moves::{Candidate, EdgeEdits, Move, MoveKind, Universe, UniverseShape};
pub use sampler::{
    sample, ChainConfig, RunReport, SampleBatch, SampleInput, SamplerKind, DEFAULT_SAMPLES,
    DEFAULT_STEPS_PER_EDGE,
};
pub use state::{initial_delta_hat, ChainState, ChainStats, Doubling, StepOutcome};
