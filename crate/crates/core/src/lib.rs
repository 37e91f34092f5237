//! Uniform sampling of graphs with a prescribed k-core sequence.
//!
//! The crate provides core decomposition, a constructive realizability test,
//! a Markov chain over all simple graphs sharing each node's core value, an
//! exact sampler for forests, a degree-preserving swap chain, and the
//! statistics used to compare observed graphs with null samples.

pub mod analysis;
pub mod chain;
pub mod config_model;
pub mod cores;
mod edge_index;
pub mod error;
pub mod graph;
pub mod io;
pub mod realize;
pub mod rng;

pub use chain::{sample, ChainConfig, ChainState, SampleBatch, SampleInput, SamplerKind};
pub use config_model::{config_sample, double_edge_swap_step, SwapChain};
pub use cores::{core_decomposition, relabel_by_core, CoreDecomposition, CoreSequence, LabelMap};
pub use error::{Error, Result};
pub use graph::Graph;
pub use realize::{build_uniform, is_realizable, realize};
