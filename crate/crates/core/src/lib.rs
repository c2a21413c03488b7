//! Resistance distances and Kirchhoff indices of the corona-vertex and
//! corona-edge products of subdivision graphs.
//!
//! Both products take a base graph `G1` and attach to each of its vertices a
//! private copy of the subdivision graph `S(G2)`. In the vertex product the
//! base vertex is joined to the original vertices of its copy; in the edge
//! product it is joined to the inserted (subdivision) vertices.
//!
//! The crate assembles a symmetric {1}-inverse of the product Laplacian from
//! small blocks (an `n2 x n2` inverse and the group inverse of `L(G1)`), reads
//! resistances from it in closed form, and checks everything against a
//! brute-force oracle built on the group inverse of the full product Laplacian.

pub mod corona;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod metrics;
pub mod one_inverse;
pub mod report;
pub mod tolerance;
pub mod verify;

pub use corona::{CoronaKind, CoronaLayout, VertexClass, VertexRef};
pub use error::{Error, Result};
pub use graph::Graph;
pub use linalg::DenseMatrix;
pub use one_inverse::OneInverse;
pub use tolerance::Tolerances;
