//! Exact tools for DAG-width: the monotone cops-and-robber game, DAG
//! decompositions, the gadget families used in hardness arguments, a
//! QBF reduction checker and Kelly-style width measures.

pub mod decomp;
pub mod gadgets;
pub mod game;
pub mod graph;
pub mod io;
pub mod logic;
pub mod measures;
pub mod vset;

pub use graph::{DiGraph, GraphBuilder, GraphError, Part, Role};
pub use vset::{VertexId, VertexSet};
