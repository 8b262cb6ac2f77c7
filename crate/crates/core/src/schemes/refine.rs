use crate::error::Result;
use crate::mesh::{FinePoint, HalfEdgeMesh};
use crate::schemes::{limit_stencil, refine_stencil, SchemeId};
use crate::Point3;

/// Data carried by control vertices: scalars or points.
pub trait Coeff: Copy + Send + Sync + 'static {
    fn zero() -> Self;
    fn add_scaled(&mut self, w: f64, x: &Self);
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn add_scaled(&mut self, w: f64, x: &Self) {
        *self += w * x;
    }
}

impl Coeff for Point3 {
    fn zero() -> Self {
        Point3::zeros()
    }
    #[inline]
    fn add_scaled(&mut self, w: f64, x: &Self) {
        *self += w * x;
    }
}

/// Connectivity of the once-refined mesh. Fine vertices are numbered as in
/// [`FinePoint::index`]; fine face `4f + i` lies in coarse face `f`
/// (for triangles, `i = 3` is the middle face). Positions are left at zero.
pub fn refine_topology(mesh: &HalfEdgeMesh) -> HalfEdgeMesh {
    let (nv, ne, nf) = (mesh.num_vertices(), mesh.num_edges(), mesh.num_faces());
    let edge_pt = |h: usize| (nv + mesh.edge(h)) as u32;
    let mut faces = Vec::with_capacity(4 * mesh.num_halfedges());
    if mesh.is_quad() {
        for f in 0..nf {
            let c = (nv + ne + f) as u32;
            let hs = mesh.face_halfedges(f);
            for h in hs.clone() {
                let p = mesh.prev(h);
                faces.extend([mesh.origin(h) as u32, edge_pt(h), c, edge_pt(p)]);
            }
        }
    } else {
        for f in 0..nf {
            let h0 = 3 * f;
            let (h1, h2) = (h0 + 1, h0 + 2);
            let (v0, v1, v2) = (mesh.origin(h0) as u32, mesh.origin(h1) as u32, mesh.origin(h2) as u32);
            let (e0, e1, e2) = (edge_pt(h0), edge_pt(h1), edge_pt(h2));
            faces.extend([v0, e0, e2, v1, e1, e0, v2, e2, e1, e0, e1, e2]);
        }
    }
    let count = nv + ne + if mesh.is_quad() { nf } else { 0 };
    HalfEdgeMesh::from_flat(mesh.arity(), vec![Point3::zeros(); count], faces)
        .expect("refinement of a manifold mesh is manifold")
}

pub fn refine_values<C: Coeff>(mesh: &HalfEdgeMesh, scheme: &SchemeId, values: &[C]) -> Result<Vec<C>> {
    scheme.check_mesh(mesh)?;
    assert_eq!(values.len(), mesh.num_vertices());
    let count = mesh.num_vertices() + mesh.num_edges() + if mesh.is_quad() { mesh.num_faces() } else { 0 };
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut acc = C::zero();
        refine_stencil(mesh, scheme, FinePoint::from_index(mesh, i), &mut |u, w| {
            acc.add_scaled(w, &values[u])
        })?;
        out.push(acc);
    }
    Ok(out)
}

/// One global subdivision step of connectivity and positions.
pub fn refine(mesh: &HalfEdgeMesh, scheme: &SchemeId) -> Result<HalfEdgeMesh> {
    let positions = refine_values(mesh, scheme, mesh.positions())?;
    let mut fine = refine_topology(mesh);
    fine.set_positions(positions);
    Ok(fine)
}

pub fn limit_values<C: Coeff>(mesh: &HalfEdgeMesh, scheme: &SchemeId, values: &[C]) -> Result<Vec<C>> {
    scheme.check_mesh(mesh)?;
    assert_eq!(values.len(), mesh.num_vertices());
    (0..mesh.num_vertices())
        .map(|v| {
            let mut acc = C::zero();
            limit_stencil(mesh, scheme, v, &mut |u, w| acc.add_scaled(w, &values[u]))?;
            Ok(acc)
        })
        .collect()
}

pub fn limit_positions(mesh: &HalfEdgeMesh, scheme: &SchemeId) -> Result<Vec<Point3>> {
    limit_values(mesh, scheme, mesh.positions())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::generate::{fan_mesh, grid_mesh, Family};
    use crate::schemes::MLoopMasks;
    use std::sync::Arc;

    fn schemes() -> Vec<SchemeId> {
        vec![
            SchemeId::CatmullClark,
            SchemeId::Loop,
            SchemeId::ModifiedLoop(Arc::new(MLoopMasks::loop_equivalent(3..=8))),
        ]
    }

    #[test]
    fn constants_are_preserved() {
        for s in schemes() {
            for n in 3..=8 {
                let m = HalfEdgeMesh::new(&fan_mesh(s.family(), n, 3)).unwrap();
                let ones = vec![1.0; m.num_vertices()];
                let fine = refine_values(&m, &s, &ones).unwrap();
                assert!(fine.iter().all(|x| (x - 1.0).abs() < 1e-14));
                let lim = limit_values(&m, &s, &ones).unwrap();
                assert!(lim.iter().all(|x| (x - 1.0).abs() < 1e-14));
            }
        }
    }

    #[test]
    fn flat_grid_stays_flat_and_regular_limit() {
        let m = HalfEdgeMesh::new(&grid_mesh(4, 4)).unwrap();
        let f = refine(&m, &SchemeId::CatmullClark).unwrap();
        assert_eq!(f.num_faces(), 64);
        assert!(f.positions().iter().all(|p| p.z == 0.0));
        // Uniform cubic B-spline limit of a uniform grid is the grid itself.
        let lim = limit_positions(&m, &SchemeId::CatmullClark).unwrap();
        assert!((lim[12] - m.position(12)).norm() < 1e-15);
        // Fine face points are face centroids on a uniform grid.
        let c = f.position(m.num_vertices() + m.num_edges());
        assert!((c - Point3::new(0.5, 0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn refined_topology_is_consistent() {
        let m = HalfEdgeMesh::new(&fan_mesh(Family::Tri, 5, 3)).unwrap();
        let f = refine_topology(&m);
        assert_eq!(f.num_faces(), 4 * m.num_faces());
        assert_eq!(f.num_vertices(), m.num_vertices() + m.num_edges());
        assert_eq!(f.valence(0), 5);
        for h in 0..f.num_halfedges() {
            if let Some(t) = f.twin(h) {
                assert_eq!(f.twin(t), Some(h));
            }
        }
    }
}
