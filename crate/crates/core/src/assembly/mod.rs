//! Gluing manifolds, composing boundary-critical matchings across a gluing,
//! local constructions, and handle decompositions.

mod compose;
mod glue;
mod handles;
mod local;

pub use compose::{compose_boundary_critical, union_formula, Composition};
pub use glue::{glue, Glued, GluingSpec};
pub use handles::{handle_pipeline, handle_pipeline_with, Handle, HandleDecomposition, PipelineOptions, PipelineResult};
pub use local::{build_local_construction, identify_ridges, random_trace, unfolding_trace, LocalConstruction, LocalConstructionTrace};
