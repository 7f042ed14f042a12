//! Core algorithms for searching even-cycle-free graphs.
//!
//! This crate is `no_std` + `alloc`: everything here is pure computation over
//! immutable graphs. File formats, generators and the CLI live in the
//! companion `thetagraph-tools` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod embed;
pub mod explorer;
pub mod graph;
pub mod oracle;
pub mod reduction;
pub mod theta;
pub mod trilayer;

pub use graph::{BipartiteView, Graph, LayerDecomposition, TrilayeredView};
pub use theta::{ThetaCertificate, WellPlacedWitness};
