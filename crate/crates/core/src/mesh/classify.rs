use crate::error::Result;
use crate::mesh::{HalfEdgeMesh, PolyMesh};
use crate::schemes::{self, SchemeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexTag {
    ExtraordinaryInterior,
    RegularInterior,
    /// Regular interior vertex whose interpolation neighbourhood reaches an
    /// extraordinary vertex `ep`; `ring` is 1 or 2.
    RegularAdjacentToEp { ring: u8, ep: usize },
    MeshBoundary,
    /// Interior vertex of the mesh lying on the rim of the active region.
    SurfaceBoundary,
}

/// Faces whose vertices are all interior. The limit surface is evaluated
/// over these faces only.
#[derive(Debug, Clone, PartialEq)]
pub struct ActiveRegion {
    pub faces: Vec<bool>,
}

impl ActiveRegion {
    pub fn of(mesh: &HalfEdgeMesh) -> Self {
        let faces = (0..mesh.num_faces())
            .map(|f| mesh.face_vertices(f).all(|v| !mesh.is_boundary(v)))
            .collect();
        ActiveRegion { faces }
    }

    pub fn is_active(&self, f: usize) -> bool {
        self.faces[f]
    }

    pub fn count(&self) -> usize {
        self.faces.iter().filter(|&&a| a).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub tags: Vec<VertexTag>,
    pub active: ActiveRegion,
}

impl Classification {
    pub fn tag(&self, v: usize) -> VertexTag {
        self.tags[v]
    }

    pub fn extraordinary(&self) -> impl Iterator<Item = usize> + '_ {
        self.tags
            .iter()
            .enumerate()
            .filter(|(_, t)| **t == VertexTag::ExtraordinaryInterior)
            .map(|(v, _)| v)
    }
}

pub(crate) fn is_ep(mesh: &HalfEdgeMesh, v: usize) -> bool {
    let regular = if mesh.is_quad() { 4 } else { 6 };
    !mesh.is_boundary(v) && mesh.valence(v) != regular
}

/// Vertices whose own local system involves the rules of a nearby
/// extraordinary vertex, with the ring distance at which it is seen.
fn nearby_ep(mesh: &HalfEdgeMesh, v: usize, scheme: &SchemeId) -> Option<(u8, usize)> {
    let first_ring = if mesh.is_quad() {
        mesh.face_ring(v)
    } else {
        mesh.neighbors(v)
    };
    if let Some(ep) = first_ring.iter().copied().filter(|&u| is_ep(mesh, u)).min() {
        return Some((1, ep));
    }
    if matches!(scheme, SchemeId::ModifiedLoop(_)) {
        let ep = first_ring
            .iter()
            .flat_map(|&u| mesh.neighbors(u))
            .filter(|&u| u != v && is_ep(mesh, u))
            .min();
        if let Some(ep) = ep {
            return Some((2, ep));
        }
    }
    None
}

pub fn classify(mesh: &HalfEdgeMesh, scheme: &SchemeId) -> Classification {
    let active = ActiveRegion::of(mesh);
    let tags = (0..mesh.num_vertices())
        .map(|v| {
            if mesh.is_boundary(v) {
                VertexTag::MeshBoundary
            } else if mesh.outgoing(v).any(|h| !active.is_active(mesh.face(h))) {
                VertexTag::SurfaceBoundary
            } else if is_ep(mesh, v) {
                VertexTag::ExtraordinaryInterior
            } else if let Some((ring, ep)) = nearby_ep(mesh, v, scheme) {
                VertexTag::RegularAdjacentToEp { ring, ep }
            } else {
                VertexTag::RegularInterior
            }
        })
        .collect();
    Classification { tags, active }
}

/// True if some face carries two or more extraordinary vertices.
pub fn has_adjacent_eps(mesh: &HalfEdgeMesh) -> bool {
    (0..mesh.num_faces()).any(|f| mesh.face_vertices(f).filter(|&v| is_ep(mesh, v)).count() > 1)
}

/// Refines once when two extraordinary vertices share a face; refinement
/// pulls them apart since new vertices are all regular.
pub fn ensure_separated_eps(mesh: &PolyMesh, scheme: &SchemeId) -> Result<PolyMesh> {
    let he = HalfEdgeMesh::new(mesh)?;
    if !has_adjacent_eps(&he) {
        return Ok(mesh.clone());
    }
    Ok(schemes::refine(&he, scheme)?.to_poly_mesh())
}
