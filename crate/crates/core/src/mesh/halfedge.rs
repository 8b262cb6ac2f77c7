use crate::error::{Error, Result};
use crate::mesh::PolyMesh;
use crate::Point3;

const NONE: u32 = u32::MAX;

/// Half-edge connectivity for a homogeneous triangle or quad mesh.
///
/// Half-edges are stored face by face: half-edge `h` belongs to face
/// `h / arity` and leaves that face's corner `h % arity`, so `next`,
/// `prev` and `face` are index arithmetic. Only `origin`, `twin` and the
/// undirected edge id are stored.
#[derive(Debug, Clone)]
pub struct HalfEdgeMesh {
    arity: usize,
    positions: Vec<Point3>,
    origin: Vec<u32>,
    twin: Vec<u32>,
    edge: Vec<u32>,
    edge_halfedge: Vec<u32>,
    // Interior vertices: the outgoing half-edge towards the lowest-index
    // neighbour. Boundary vertices: the most clockwise outgoing half-edge.
    outgoing: Vec<u32>,
    valence: Vec<u32>,
    boundary: Vec<bool>,
}

impl HalfEdgeMesh {
    pub fn new(mesh: &PolyMesh) -> Result<Self> {
        let arity = mesh.check_faces()?;
        let flat: Vec<u32> = mesh.faces.iter().flatten().map(|&v| v as u32).collect();
        Self::from_flat(arity, mesh.vertices.clone(), flat)
    }

    /// Builds from a flat corner list (`faces.len()` a multiple of `arity`).
    pub fn from_flat(arity: usize, positions: Vec<Point3>, faces: Vec<u32>) -> Result<Self> {
        let nv = positions.len();
        let nh = faces.len();
        let origin = faces;

        // Outgoing half-edges grouped by origin (CSR).
        let mut start = vec![0u32; nv + 1];
        for &o in &origin {
            start[o as usize + 1] += 1;
        }
        for v in 0..nv {
            start[v + 1] += start[v];
        }
        let mut fill = start.clone();
        let mut out_list = vec![0u32; nh];
        for (h, &o) in origin.iter().enumerate() {
            out_list[fill[o as usize] as usize] = h as u32;
            fill[o as usize] += 1;
        }

        let next = |h: usize| -> usize {
            let f = h / arity;
            f * arity + (h % arity + 1) % arity
        };
        let prev = |h: usize| -> usize {
            let f = h / arity;
            f * arity + (h % arity + arity - 1) % arity
        };

        let mut twin = vec![NONE; nh];
        for h in 0..nh {
            let a = origin[h] as usize;
            let b = origin[next(h)] as usize;
            let outs_a = &out_list[start[a] as usize..start[a + 1] as usize];
            if outs_a
                .iter()
                .any(|&g| g as usize != h && origin[next(g as usize)] as usize == b)
            {
                return Err(Error::NonManifold(format!(
                    "directed edge {a}->{b} used twice (more than two faces or inconsistent orientation)"
                )));
            }
            let outs_b = &out_list[start[b] as usize..start[b + 1] as usize];
            if let Some(&g) = outs_b.iter().find(|&&g| origin[next(g as usize)] as usize == a) {
                twin[h] = g;
            }
        }

        let mut edge = vec![NONE; nh];
        let mut edge_halfedge = Vec::with_capacity(nh / 2 + 1);
        for h in 0..nh {
            let t = twin[h];
            if t == NONE || (h as u32) < t {
                let e = edge_halfedge.len() as u32;
                edge[h] = e;
                if t != NONE {
                    edge[t as usize] = e;
                }
                edge_halfedge.push(h as u32);
            }
        }

        let mut outgoing = vec![NONE; nv];
        let mut valence = vec![0u32; nv];
        let mut boundary = vec![false; nv];
        for v in 0..nv {
            let outs = &out_list[start[v] as usize..start[v + 1] as usize];
            valence[v] = outs.len() as u32;
            if outs.is_empty() {
                boundary[v] = true;
                continue;
            }
            let mut starts = outs.iter().filter(|&&h| twin[h as usize] == NONE);
            let first = match (starts.next(), starts.next()) {
                (Some(&h), None) => {
                    boundary[v] = true;
                    h
                }
                (None, _) => *outs
                    .iter()
                    .min_by_key(|&&h| origin[next(h as usize)])
                    .expect("non-empty"),
                (Some(_), Some(_)) => {
                    return Err(Error::NonManifold(format!(
                        "vertex {v} joins several face fans"
                    )))
                }
            };
            // Walk counter-clockwise and make sure the fan covers every face.
            let mut count = 1;
            let mut h = first as usize;
            loop {
                let t = twin[prev(h)];
                if t == NONE || t == first {
                    break;
                }
                h = t as usize;
                count += 1;
                if count > outs.len() {
                    break;
                }
            }
            if count != outs.len() {
                return Err(Error::NonManifold(format!(
                    "star of vertex {v} is not a single fan"
                )));
            }
            outgoing[v] = first;
        }

        Ok(HalfEdgeMesh {
            arity,
            positions,
            origin,
            twin,
            edge,
            edge_halfedge,
            outgoing,
            valence,
            boundary,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
    pub fn is_quad(&self) -> bool {
        self.arity == 4
    }
    pub fn num_vertices(&self) -> usize {
        self.positions.len()
    }
    pub fn num_faces(&self) -> usize {
        self.origin.len() / self.arity
    }
    pub fn num_edges(&self) -> usize {
        self.edge_halfedge.len()
    }
    pub fn num_halfedges(&self) -> usize {
        self.origin.len()
    }
    pub fn positions(&self) -> &[Point3] {
        &self.positions
    }
    pub fn position(&self, v: usize) -> Point3 {
        self.positions[v]
    }
    pub fn set_positions(&mut self, positions: Vec<Point3>) {
        assert_eq!(positions.len(), self.positions.len());
        self.positions = positions;
    }

    #[inline]
    pub fn origin(&self, h: usize) -> usize {
        self.origin[h] as usize
    }
    #[inline]
    pub fn next(&self, h: usize) -> usize {
        let f = h / self.arity;
        f * self.arity + (h % self.arity + 1) % self.arity
    }
    #[inline]
    pub fn prev(&self, h: usize) -> usize {
        let f = h / self.arity;
        f * self.arity + (h % self.arity + self.arity - 1) % self.arity
    }
    #[inline]
    pub fn dest(&self, h: usize) -> usize {
        self.origin(self.next(h))
    }
    #[inline]
    pub fn twin(&self, h: usize) -> Option<usize> {
        let t = self.twin[h];
        (t != NONE).then_some(t as usize)
    }
    #[inline]
    pub fn face(&self, h: usize) -> usize {
        h / self.arity
    }
    #[inline]
    pub fn edge(&self, h: usize) -> usize {
        self.edge[h] as usize
    }
    pub fn edge_halfedge(&self, e: usize) -> usize {
        self.edge_halfedge[e] as usize
    }
    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let h = self.edge_halfedge(e);
        (self.origin(h), self.dest(h))
    }
    pub fn edge_is_boundary(&self, e: usize) -> bool {
        self.twin(self.edge_halfedge(e)).is_none()
    }
    pub fn face_vertices(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        self.origin[f * self.arity..(f + 1) * self.arity]
            .iter()
            .map(|&v| v as usize)
    }
    pub fn face_halfedges(&self, f: usize) -> std::ops::Range<usize> {
        f * self.arity..(f + 1) * self.arity
    }

    /// Number of incident faces.
    pub fn valence(&self, v: usize) -> usize {
        self.valence[v] as usize
    }
    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary[v]
    }

    /// Outgoing half-edges of `v`, counter-clockwise. For interior vertices the
    /// walk starts at the edge to the lowest-index neighbour.
    pub fn outgoing(&self, v: usize) -> Outgoing<'_> {
        let first = self.outgoing[v];
        Outgoing {
            mesh: self,
            first,
            cur: first,
        }
    }

    /// Counter-clockwise edge neighbours. For a boundary vertex the list runs
    /// from one boundary neighbour to the other.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.outgoing(v).map(|h| self.dest(h)).collect();
        if self.boundary[v] {
            if let Some(h) = self.outgoing(v).last() {
                out.push(self.origin(self.prev(h)));
            }
        }
        out
    }

    /// Faces around `v`, counter-clockwise, in the same order as `outgoing`.
    pub fn incident_faces(&self, v: usize) -> Vec<usize> {
        self.outgoing(v).map(|h| self.face(h)).collect()
    }

    /// Vertices sharing a face with `v` (excluding `v`), sorted.
    pub fn face_ring(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .outgoing(v)
            .flat_map(|h| self.face_vertices(self.face(h)))
            .filter(|&u| u != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn halfedge(&self, a: usize, b: usize) -> Option<usize> {
        if self.outgoing[a] == NONE {
            return None;
        }
        self.outgoing(a).find(|&h| self.dest(h) == b)
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.halfedge(a, b)
            .or_else(|| self.halfedge(b, a))
            .map(|h| self.edge(h))
    }

    /// Rotates an outgoing half-edge of its origin counter-clockwise.
    pub fn rotate_ccw(&self, h: usize) -> Option<usize> {
        self.twin(self.prev(h))
    }

    pub fn to_poly_mesh(&self) -> PolyMesh {
        PolyMesh {
            vertices: self.positions.clone(),
            faces: (0..self.num_faces())
                .map(|f| self.face_vertices(f).collect())
                .collect(),
        }
    }
}

pub struct Outgoing<'a> {
    mesh: &'a HalfEdgeMesh,
    first: u32,
    cur: u32,
}

impl Iterator for Outgoing<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.cur == NONE {
            return None;
        }
        let h = self.cur as usize;
        self.cur = match self.mesh.rotate_ccw(h) {
            Some(t) if t as u32 != self.first => t as u32,
            _ => NONE,
        };
        Some(h)
    }
}
