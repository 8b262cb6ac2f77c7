//! Global view of the interpolation problem: every limit value at a vertex
//! of the once-refined mesh is a sparse combination of coarse coefficients.
//! Local systems are sub-blocks of that map.

use std::collections::BTreeSet;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::mesh::{classify, ordered_ring, Classification, FinePoint, HalfEdgeMesh};
use crate::schemes::{limit_positions, limit_stencil, refine, refine_stencil, SchemeId};
use crate::Point3;

use super::solve::{select_rows, InverseRows};

/// Entries below this are treated as structural zeros.
const DROP: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct Engine {
    pub scheme: SchemeId,
    pub coarse: HalfEdgeMesh,
    pub fine: HalfEdgeMesh,
    /// Limit positions of the fine vertices.
    pub limit: Vec<Point3>,
    pub class: Classification,
}

/// A square local system: `a[(i, j)]` is the limit value at fine point
/// `rows[i]` of the basis function of coarse vertex `cols[j]`.
#[derive(Debug, Clone)]
pub struct LocalProblem {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub inverse: InverseRows,
}

impl LocalProblem {
    /// Functional weights for coarse vertex `v`, aligned with `rows`.
    pub fn weights_for(&self, v: usize) -> Result<Vec<f64>> {
        let k = self.cols.binary_search(&v).map_err(|_| Error::UnsupportedBoundary(v))?;
        Ok(self.inverse.row(k)?.iter().copied().collect())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.cols.binary_search(&v).is_ok()
    }
}

impl Engine {
    pub fn new(coarse: HalfEdgeMesh, scheme: SchemeId) -> Result<Self> {
        scheme.check_mesh(&coarse)?;
        let fine = refine(&coarse, &scheme)?;
        let limit = limit_positions(&fine, &scheme)?;
        let class = classify(&coarse, &scheme);
        Ok(Engine { scheme, coarse, fine, limit, class })
    }

    /// Sparse row of the coarse-to-limit map at fine vertex `x`, sorted by
    /// coarse index.
    pub fn g_row(&self, x: usize) -> Result<Vec<(usize, f64)>> {
        let mut acc: Vec<(usize, f64)> = Vec::with_capacity(64);
        let mut err = None;
        limit_stencil(&self.fine, &self.scheme, x, &mut |y, w| {
            let p = FinePoint::from_index(&self.coarse, y);
            if let Err(e) = refine_stencil(&self.coarse, &self.scheme, p, &mut |u, w2| acc.push((u, w * w2))) {
                err = Some(e);
            }
        })?;
        if let Some(e) = err {
            return Err(e);
        }
        acc.sort_unstable_by_key(|&(u, _)| u);
        let mut out: Vec<(usize, f64)> = Vec::with_capacity(acc.len());
        for (u, w) in acc {
            match out.last_mut() {
                Some((last, s)) if *last == u => *s += w,
                _ => out.push((u, w)),
            }
        }
        out.retain(|&(_, w)| w.abs() > DROP);
        Ok(out)
    }

    /// Fine vertices lying on the closure of coarse face `f`.
    pub fn face_points(&self, f: usize, out: &mut Vec<usize>) {
        let m = &self.coarse;
        for h in m.face_halfedges(f) {
            out.push(FinePoint::Vertex(m.origin(h)).index(m));
            out.push(FinePoint::Edge(m.edge(h)).index(m));
        }
        if m.is_quad() {
            out.push(FinePoint::Face(f).index(m));
        }
    }

    /// Interpolation points of the 1-ring of an interior vertex, in slot
    /// order.
    pub fn star_points(&self, t: usize) -> Result<Vec<usize>> {
        let ring = ordered_ring(&self.coarse, t, 1)?;
        Ok(ring.interp.iter().map(|p| p.index(&self.coarse)).collect())
    }

    /// The system whose rows are `rows` and whose columns are every coarse
    /// vertex with a nonzero entry on them.
    pub fn assemble(&self, rows: &[usize]) -> Result<(Vec<usize>, DMatrix<f64>)> {
        let g: Vec<Vec<(usize, f64)>> = rows.iter().map(|&x| self.g_row(x)).collect::<Result<_>>()?;
        let cols: Vec<usize> =
            g.iter().flatten().map(|&(u, _)| u).collect::<BTreeSet<_>>().into_iter().collect();
        let mut a = DMatrix::zeros(rows.len(), cols.len());
        for (i, row) in g.iter().enumerate() {
            for &(u, w) in row {
                a[(i, cols.binary_search(&u).unwrap())] = w;
            }
        }
        Ok((cols, a))
    }

    /// The local problem hosted by interior vertex `t`, if square and
    /// well-conditioned.
    pub fn host(&self, t: usize) -> Result<LocalProblem> {
        let rows = self.star_points(t)?;
        let (cols, a) = self.assemble(&rows)?;
        if cols.len() != rows.len() {
            return Err(Error::SingularSystem(f64::INFINITY));
        }
        Ok(LocalProblem { rows, cols, inverse: InverseRows::new(a)? })
    }

    /// A square system over the active faces near `v`: the region grows
    /// until the points on it determine every basis function they touch,
    /// then a well-conditioned subset of the points is kept.
    pub fn corner_problem(&self, v: usize) -> Result<LocalProblem> {
        let mesh = &self.coarse;
        let dist = bfs(mesh, v, 6, false);
        let mut last = Error::UnsupportedBoundary(v);
        for r in 2..=5 {
            let mut faces: Vec<usize> = (0..mesh.num_vertices())
                .filter(|&u| dist[u] <= r)
                .flat_map(|u| mesh.incident_faces(u))
                .filter(|&f| self.class.active.is_active(f))
                .collect();
            faces.sort_unstable();
            faces.dedup();
            let mut pts = Vec::new();
            for &f in &faces {
                self.face_points(f, &mut pts);
            }
            pts.sort_unstable();
            pts.dedup();
            let (cols, a) = self.assemble(&pts)?;
            if cols.binary_search(&v).is_err() {
                continue;
            }
            let Some(keep) = select_rows(&a) else {
                last = Error::SingularSystem(f64::INFINITY);
                continue;
            };
            let sub = DMatrix::from_fn(keep.len(), cols.len(), |i, j| a[(keep[i], j)]);
            match InverseRows::new(sub) {
                Ok(inverse) => {
                    let rows = keep.iter().map(|&i| pts[i]).collect();
                    return Ok(LocalProblem { rows, cols, inverse });
                }
                Err(e) => last = e,
            }
        }
        Err(last)
    }

    /// Coarse vertices whose basis functions are nonzero somewhere on the
    /// active region.
    pub fn active_vertices(&self) -> Result<Vec<bool>> {
        let mut seen = vec![false; self.fine.num_vertices()];
        let mut active = vec![false; self.coarse.num_vertices()];
        let mut pts = Vec::new();
        for f in (0..self.coarse.num_faces()).filter(|&f| self.class.active.is_active(f)) {
            pts.clear();
            self.face_points(f, &mut pts);
            for &x in &pts {
                if std::mem::replace(&mut seen[x], true) {
                    continue;
                }
                for (u, _) in self.g_row(x)? {
                    active[u] = true;
                }
            }
        }
        Ok(active)
    }
}

/// Graph distances from `v` up to `depth` (`usize::MAX` beyond). With
/// `faces` set, vertices sharing a face count as adjacent.
pub fn bfs(mesh: &HalfEdgeMesh, v: usize, depth: usize, faces: bool) -> Vec<usize> {
    let mut dist = vec![usize::MAX; mesh.num_vertices()];
    dist[v] = 0;
    let mut frontier = vec![v];
    for d in 1..=depth {
        let mut next = Vec::new();
        for &u in &frontier {
            let adj = if faces { mesh.face_ring(u) } else { mesh.neighbors(u) };
            for w in adj {
                if dist[w] == usize::MAX {
                    dist[w] = d;
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    dist
}
