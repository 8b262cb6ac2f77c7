use crate::error::{Error, Result};
use crate::mesh::HalfEdgeMesh;

/// A vertex of the once-refined mesh, named by the coarse entity that
/// spawns it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FinePoint {
    Vertex(usize),
    Edge(usize),
    Face(usize),
}

impl FinePoint {
    /// Index in the refined mesh: vertices keep their index, edge points
    /// follow, then face points (quads only).
    pub fn index(self, mesh: &HalfEdgeMesh) -> usize {
        match self {
            FinePoint::Vertex(v) => v,
            FinePoint::Edge(e) => mesh.num_vertices() + e,
            FinePoint::Face(f) => mesh.num_vertices() + mesh.num_edges() + f,
        }
    }

    pub fn from_index(mesh: &HalfEdgeMesh, i: usize) -> FinePoint {
        let (nv, ne) = (mesh.num_vertices(), mesh.num_edges());
        if i < nv {
            FinePoint::Vertex(i)
        } else if i < nv + ne {
            FinePoint::Edge(i - nv)
        } else {
            FinePoint::Face(i - nv - ne)
        }
    }
}

/// Neighbourhood of an interior vertex in sector order.
///
/// Sector `j` spans the face between the spokes to `neighbors[j]` and
/// `neighbors[j+1]`; sector 0 starts at the lowest-index neighbour and
/// sectors advance counter-clockwise.
///
/// `interp` lists the interpolation slots: the centre, then per sector
/// (quads) spoke midpoint, neighbour, face centroid, the two ring-edge
/// midpoints and the diagonal vertex, or (triangles) spoke midpoint,
/// neighbour and ring-edge midpoint.
///
/// With depth 2, `controls` holds the control vertices whose basis
/// functions are nonzero on the 1-ring (centre first, then per sector
/// quads: `(1,0) (2,0) (1,1) (2,1) (1,2) (2,2)`, triangles: `(1,0) (2,0)
/// (1,1)` in sector coordinates), and `fine` the points of the refined net
/// that determine the limit at every slot (quads: 12 per sector, triangles:
/// 6 per sector).
#[derive(Debug, Clone, PartialEq)]
pub struct OrderedRing {
    pub center: usize,
    pub neighbors: Vec<usize>,
    pub diagonals: Vec<usize>,
    pub faces: Vec<usize>,
    pub spoke_edges: Vec<usize>,
    pub ring_edges: Vec<usize>,
    pub interp: Vec<FinePoint>,
    pub controls: Vec<usize>,
    pub fine: Vec<FinePoint>,
}

impl OrderedRing {
    pub fn valence(&self) -> usize {
        self.neighbors.len()
    }
}

pub fn ordered_ring(mesh: &HalfEdgeMesh, v: usize, depth: usize) -> Result<OrderedRing> {
    let incomplete = || Error::IncompleteRing { vertex: v, depth };
    if mesh.is_boundary(v) {
        return Err(incomplete());
    }
    let twin = |h: usize| mesh.twin(h).ok_or_else(incomplete);
    let quad = mesh.is_quad();
    let regular = if quad { 4 } else { 6 };
    let spokes: Vec<usize> = mesh.outgoing(v).collect();
    let n = spokes.len();

    let mut ring = OrderedRing {
        center: v,
        neighbors: Vec::with_capacity(n),
        diagonals: Vec::new(),
        faces: Vec::with_capacity(n),
        spoke_edges: Vec::with_capacity(n),
        ring_edges: Vec::new(),
        interp: vec![FinePoint::Vertex(v)],
        controls: Vec::new(),
        fine: Vec::new(),
    };
    if depth >= 2 {
        ring.controls.push(v);
        ring.fine.push(FinePoint::Vertex(v));
    }

    for &h0 in &spokes {
        let e = mesh.dest(h0);
        let h1 = mesh.next(h0);
        ring.neighbors.push(e);
        ring.faces.push(mesh.face(h0));
        ring.spoke_edges.push(mesh.edge(h0));
        if quad {
            let h2 = mesh.next(h1);
            let f = mesh.dest(h1);
            ring.diagonals.push(f);
            ring.ring_edges.push(mesh.edge(h1));
            ring.ring_edges.push(mesh.edge(h2));
            ring.interp.extend([
                FinePoint::Edge(mesh.edge(h0)),
                FinePoint::Vertex(e),
                FinePoint::Face(mesh.face(h0)),
                FinePoint::Edge(mesh.edge(h1)),
                FinePoint::Edge(mesh.edge(h2)),
                FinePoint::Vertex(f),
            ]);
            if depth >= 2 {
                for u in [e, f] {
                    if mesh.is_boundary(u) || mesh.valence(u) != regular {
                        return Err(incomplete());
                    }
                }
                let t1 = twin(h1)?;
                let g1 = mesh.next(t1);
                let g2 = mesh.next(g1);
                let t2 = twin(h2)?;
                let q = mesh.next(t2);
                let tq = twin(q)?;
                let d1 = mesh.next(tq);
                let d2 = mesh.next(d1);
                ring.controls.extend([e, mesh.dest(g1), f, mesh.dest(g2), mesh.dest(q), mesh.dest(d2)]);
                ring.fine.extend([
                    FinePoint::Edge(mesh.edge(h0)),
                    FinePoint::Vertex(e),
                    FinePoint::Edge(mesh.edge(g1)),
                    FinePoint::Face(mesh.face(h0)),
                    FinePoint::Edge(mesh.edge(h1)),
                    FinePoint::Face(mesh.face(t1)),
                    FinePoint::Edge(mesh.edge(h2)),
                    FinePoint::Vertex(f),
                    FinePoint::Edge(mesh.edge(d1)),
                    FinePoint::Face(mesh.face(t2)),
                    FinePoint::Edge(mesh.edge(q)),
                    FinePoint::Face(mesh.face(tq)),
                ]);
            }
        } else {
            ring.ring_edges.push(mesh.edge(h1));
            ring.interp.extend([
                FinePoint::Edge(mesh.edge(h0)),
                FinePoint::Vertex(e),
                FinePoint::Edge(mesh.edge(h1)),
            ]);
            if depth >= 2 {
                if mesh.is_boundary(e) || mesh.valence(e) != regular {
                    return Err(incomplete());
                }
                let mut g = twin(h0)?;
                for _ in 0..3 {
                    g = twin(mesh.prev(g))?;
                }
                let nt = mesh.next(twin(h1)?);
                ring.controls.extend([e, mesh.dest(g), mesh.dest(nt)]);
                ring.fine.extend([
                    FinePoint::Edge(mesh.edge(h0)),
                    FinePoint::Vertex(e),
                    FinePoint::Edge(mesh.edge(g)),
                    FinePoint::Edge(mesh.edge(h1)),
                    FinePoint::Edge(mesh.edge(nt)),
                    FinePoint::Edge(mesh.edge(mesh.next(nt))),
                ]);
            }
        }
    }
    Ok(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::generate::{fan_mesh, grid_mesh, Family};

    #[test]
    fn regular_quad_counts() {
        let m = HalfEdgeMesh::new(&grid_mesh(6, 6)).unwrap();
        let r = ordered_ring(&m, 3 * 7 + 3, 2).unwrap();
        assert_eq!(r.neighbors.len(), 4);
        assert_eq!(r.diagonals.len(), 4);
        assert_eq!(r.faces.len(), 4);
        assert_eq!(r.ring_edges.len(), 8);
        assert_eq!(r.spoke_edges.len(), 4);
        assert_eq!(r.interp.len(), 25);
        let mut c = r.controls.clone();
        c.sort_unstable();
        c.dedup();
        assert_eq!(c.len(), 25);
        assert_eq!(r.fine.len(), 49);
    }

    #[test]
    fn slot_counts_for_all_valences() {
        for n in 3..=8 {
            let q = HalfEdgeMesh::new(&fan_mesh(Family::Quad, n, 4)).unwrap();
            let r = ordered_ring(&q, 0, 2).unwrap();
            assert_eq!(r.interp.len(), 6 * n + 1);
            assert_eq!(r.controls.len(), 6 * n + 1);
            assert_eq!(r.fine.len(), 12 * n + 1);
            let t = HalfEdgeMesh::new(&fan_mesh(Family::Tri, n, 4)).unwrap();
            let r = ordered_ring(&t, 0, 2).unwrap();
            assert_eq!(r.interp.len(), 3 * n + 1);
            assert_eq!(r.controls.len(), 3 * n + 1);
            assert_eq!(r.fine.len(), 6 * n + 1);
            let mut c = r.controls.clone();
            c.sort_unstable();
            c.dedup();
            assert_eq!(c.len(), 3 * n + 1);
        }
    }

    #[test]
    fn anchor_is_lowest_neighbor_and_ccw() {
        let m = HalfEdgeMesh::new(&fan_mesh(Family::Quad, 5, 3)).unwrap();
        let r = ordered_ring(&m, 0, 1).unwrap();
        assert_eq!(r.neighbors[0], *r.neighbors.iter().min().unwrap());
        let angle = |u: usize| m.position(u).y.atan2(m.position(u).x);
        for j in 0..5 {
            let (a, b) = (angle(r.neighbors[j]), angle(r.neighbors[(j + 1) % 5]));
            let d = (b - a).rem_euclid(std::f64::consts::TAU);
            assert!(d > 0.0 && d < std::f64::consts::PI);
        }
    }

    #[test]
    fn truncated_ring_is_reported() {
        let m = HalfEdgeMesh::new(&grid_mesh(3, 3)).unwrap();
        assert!(matches!(ordered_ring(&m, 0, 1), Err(Error::IncompleteRing { .. })));
        assert!(ordered_ring(&m, 5, 1).is_ok());
        assert!(matches!(ordered_ring(&m, 5, 2), Err(Error::IncompleteRing { .. })));
    }
}
