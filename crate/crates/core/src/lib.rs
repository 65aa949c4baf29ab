//! Exact spectral and structural analysis of tournaments through their
//! skew-adjacency matrices: determinants, Pfaffians, characteristic
//! polynomials, switching classes, the class of tournaments generated from the
//! 2-tournament by joins and switches, and certificate-producing searches for
//! the fewest vertices to add to or remove from a tournament to make it
//! unimodular.

pub mod error;
pub mod linalg;
pub mod tournament;
pub mod spectra;
pub mod constructions;
pub mod decomp;
pub mod search;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, IntPoly};
pub use tournament::{Tournament, VertexSet};
