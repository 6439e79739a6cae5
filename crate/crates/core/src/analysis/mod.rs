//! Graph- and action-level analyses of built coset graphs.

mod arcs;
mod iso;
mod maps;
mod metrics;
mod quotient;
mod report;

pub use arcs::{
    arc_orbits, generator_set, local_arc_orbits, vertex_transitive, ArcOrbitReport, GroupKind,
};
pub use iso::{graphs_equal_iff, iso_classes, reference_graph, small_iso, ReferenceGraph};
pub use maps::{action_map, sigma_map, tau_bar_map, VertexMap};
pub use metrics::{antipodal_check, diameter, farthest_from, girth, DEFAULT_GIRTH_SAMPLE};
pub use quotient::{
    orbit_partition, quotient_by_second_factor, structure_checks_c_i, OrbitPartition,
    QuotientSummary, StructureReport,
};
pub use report::{analyze, AnalysisOptions, AnalysisReport};

use thiserror::Error;

use crate::cosetgraph::CosetError;
use crate::gf2::FieldError;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("coset of vertex {0} leaves the component under the action")]
    VertexEscapesComponent(u32),
    #[error("map does not preserve adjacency: edge {0}-{1}")]
    NotAutomorphism(u32, u32),
    #[error("map is not an isomorphism: edge {0}-{1} has no image edge")]
    NotIsomorphism(u32, u32),
    #[error("graphs are over different fields")]
    FieldMismatch,
    #[error("no cycle found")]
    Acyclic,
    #[error("shortest cycle through vertex {vertex} is {found}, through the base {base}")]
    GirthDisagreement { vertex: u32, found: u32, base: u32 },
    #[error("girth is at most {bound}, so {s}-walks without backtracking need not be arcs")]
    GirthTooSmall { s: u32, bound: u32 },
    #[error("arc length {0} is outside 0..=4")]
    ArcLengthOutOfRange(u32),
    #[error("graph is not cubic")]
    NotCubic,
    #[error("generator does not preserve the bipartition")]
    NotPartPreserving,
    #[error("vertex transitivity is not certified and the graph is too large for all pairs")]
    NotVertexTransitive,
    #[error("isomorphism class of size {size}, expected {expected}")]
    BadClassSize { size: usize, expected: usize },
    #[error("unknown reference graph {0:?}")]
    UnknownName(String),
    #[error("structure check failed: {0}")]
    StructureViolation(String),
    #[error("degree {0} is too small for this analysis")]
    DegreeTooSmall(u32),
    #[error("degree {0} is too large for this analysis")]
    DegreeTooLarge(u32),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
