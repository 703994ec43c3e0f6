//! Discrete Morse theory on finite simplicial complexes.

pub mod assembly;
pub mod cli;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod lift;
pub mod morse;
pub mod simplex;
pub mod subdivision;

pub use complex::{DualGraph, FaceId, FaceIndex, ManifoldReport, SimplicialComplex, Subcomplex};
pub use error::{Error, Result};
pub use homology::betti_gf2;
pub use simplex::{Simplex, Vertex};
