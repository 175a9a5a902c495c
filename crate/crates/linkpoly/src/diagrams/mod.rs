//! Planar combinatorial maps decorated as link diagrams, 4-valent
//! rigid-vertex plane graphs, and trivalent classic graphs, with
//! coordinate-free writhe, Seifert circle, and rotation number
//! computations.

pub mod braid;
pub mod canon;
pub mod edit;
pub mod format;
pub mod link;
pub mod map;
pub mod resolve;

pub use edit::{Pairing, Pass};
pub use link::{
    DiagramError, EdgeKind, FourValentGraph, LinkDiagram, Orientation, TrivalentGraph,
};
pub use map::{Dart, EdgeId, FaceId, FreeLoop, PlanarMap, ValidationReport, VertexId};
pub use resolve::{
    graph_rotation_number, link_rotation_number, link_seifert, ResolvedView,
    SeifertDecomposition, VertexAction,
};
