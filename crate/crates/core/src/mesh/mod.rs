pub(crate) mod classify;
pub mod generate;
mod halfedge;
mod poly;
mod ring;

pub use classify::{classify, ensure_separated_eps, has_adjacent_eps, ActiveRegion, Classification, VertexTag};
pub use halfedge::{HalfEdgeMesh, Outgoing};
pub use poly::{load_obj, write_obj, PolyMesh};
pub use ring::{ordered_ring, FinePoint, OrderedRing};
