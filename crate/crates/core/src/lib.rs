//! Spectral extremal problems for graphs with a given number of edges:
//! graph primitives, canonical forms, exact characteristic polynomials,
//! equitable partitions and an exhaustive search driver.

pub mod cli;
pub mod equitable;
pub mod families;
pub mod graph;
pub mod par;
pub mod search;
pub mod spectral;
pub mod subgraph;
pub mod verify;
