//! Stellar and derived subdivisions, bistellar flips, prisms, and the
//! construction of endo-collapsible subdivisions of balls.

mod flip;
mod nicesub;
mod prism;
mod star;

pub use flip::bistellar_flip;
pub use nicesub::{nicesub_pipeline, Nicesub};
pub use prism::{prism_over, Prism};
pub use star::{derived_subdivision, star_face, SubdivisionMap};

pub(crate) use star::{open_cell, Starring, VertexKey};
