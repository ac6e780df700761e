//! Exact and Monte Carlo machinery for the forest-building process.
//!
//! Scan the edges of a simple graph in uniformly random order and keep an
//! edge whenever it touches a vertex that no earlier edge touched. The kept
//! edges form a spanning forest; this crate studies the law of its number
//! of trees, `P(G, k)`, collected in the polynomial `p_G(x) = sum_k P(G, k) x^k`.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line
//! and parallel drivers live in the `forestpoly` companion crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod canon;
pub mod cheeger;
pub mod closed_forms;
pub mod combinatorics;
pub mod distribution;
pub mod engine;
mod error;
pub mod generate;
pub mod graph;
pub mod graph6;
pub mod monte_carlo;
pub mod process;
pub mod search;

pub use canon::{canonical_key, is_edge_transitive, CanonicalKey};
pub use distribution::{ForestDistribution, Rational};
pub use engine::{
    expected_components, forest_polynomial, single_component_probability, ForestEngine,
};
pub use error::{Error, Result};
pub use generate::{generate, GeneratorSpec};
pub use graph::{EdgeId, Graph};
pub use process::{brute_force_distribution, run_process, EdgeOrdering, ProcessResult};
