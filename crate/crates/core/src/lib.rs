//! Acyclic colouring of graphs: verification, exact search, bounds,
//! gadgets and hardness reductions.

pub mod colouring;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod harness;
pub mod reductions;
pub mod solver;
pub mod symmetry;

pub use colouring::{find_bicoloured_cycle, is_acyclic_colouring, is_proper, Colouring, CycleWitness};
pub use error::{Error, Result};
pub use graph::Graph;
