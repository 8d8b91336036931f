//! Finite-window computations on Cayley graphs: exact group arithmetic,
//! Hamiltonian orders in bounded graph powers, perimeters and maps between
//! bounded-degree trees, spanning trees, and group tilings.

pub mod error;
pub mod graph;
pub mod group;
pub mod hamilton;
pub mod spanning;
pub mod tiling;
pub mod trees;

pub use error::{Error, Result};
