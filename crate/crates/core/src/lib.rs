//! Graph packing toolkit.
//!
//! Two graphs `G1` (blue) and `G2` (red) on `n` vertices pack when `G2` can be
//! relabeled so that no pair is an edge of both. This crate provides:
//!
//! - [`graph`] / [`graph6`]: bit-packed simple graphs and graph6 I/O,
//! - [`invariants`]: maximum degree, codegree and adjacent codegree,
//! - [`packing`]: labelings, purple edges and an exact packing search,
//! - [`swaps`]: cyclic swaps, the swap-safety test, neighborhood profiles,
//!   near-packing diagnostics and a swap-based local search,
//! - [`conditions`]: closed-form sufficient conditions for packing,
//! - [`generators`]: instance families and exhaustive enumeration,
//! - [`harness`]: experiment runner and report records behind the CLI.

pub mod bits;
pub mod conditions;
pub mod error;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod invariants;
pub mod packing;
pub mod rng;
pub mod swaps;

pub use error::{Error, Result};
pub use graph::{EdgeList, Graph, GraphBuilder};
pub use packing::{Labeling, NearPacking, PackingResult};
