//! Refinement and limit stencils, expressed as weighted sums of coarse
//! vertices. Every stencil is affine (weights sum to 1).

use std::f64::consts::PI;

use num_traits::FromPrimitive;

use crate::error::Result;
use crate::mesh::{FinePoint, HalfEdgeMesh};
use crate::numeric::{Exact, Weight};
use crate::schemes::SchemeId;

/// Loop's neighbour weight `(5/8 - (3/8 + cos(2 pi/n)/4)^2) / n`.
pub fn loop_beta(n: usize) -> f64 {
    // Exactly representable where the cosine is rational.
    match n {
        3 => return 3.0 / 16.0,
        4 => return 31.0 / 256.0,
        6 => return 1.0 / 16.0,
        _ => {}
    }
    let c = 0.375 + 0.25 * (2.0 * PI / n as f64).cos();
    (0.625 - c * c) / n as f64
}

/// Exact value for the valences where the cosine is rational.
pub fn loop_beta_exact(n: usize) -> Option<Exact> {
    let cos = match n {
        3 => Exact::frac(-1, 2),
        4 => Exact::int(0),
        6 => Exact::frac(1, 2),
        _ => return None,
    };
    let c = Exact::frac(3, 8) + cos / Exact::int(4);
    Some((Exact::frac(5, 8) - c.clone() * c) / Exact::from_usize(n).unwrap())
}

fn is_ep(mesh: &HalfEdgeMesh, v: usize) -> bool {
    crate::mesh::classify::is_ep(mesh, v)
}

/// Coarse weights `(alpha, beta)` of the triangle vertex rule at an
/// interior vertex of valence `n`.
pub fn vertex_rule(scheme: &SchemeId, n: usize) -> Result<(f64, f64)> {
    match scheme {
        SchemeId::ModifiedLoop(masks) if n != 6 => {
            let m = masks.get(n)?;
            Ok((m.alpha, m.beta))
        }
        _ => {
            let beta = loop_beta(n);
            Ok((1.0 - n as f64 * beta, beta))
        }
    }
}

/// The two boundary neighbours of a boundary vertex (start and end of its
/// face fan).
fn boundary_neighbors(mesh: &HalfEdgeMesh, v: usize) -> (usize, usize) {
    let first = mesh.outgoing(v).next().expect("vertex has a face");
    let last = mesh.outgoing(v).last().expect("vertex has a face");
    (mesh.dest(first), mesh.origin(mesh.prev(last)))
}

/// Coarse stencil of a vertex of the once-refined mesh.
pub fn refine_stencil(
    mesh: &HalfEdgeMesh,
    scheme: &SchemeId,
    p: FinePoint,
    emit: &mut impl FnMut(usize, f64),
) -> Result<()> {
    match p {
        FinePoint::Face(f) => {
            let w = 1.0 / mesh.arity() as f64;
            for v in mesh.face_vertices(f) {
                emit(v, w);
            }
        }
        FinePoint::Edge(e) => {
            let h = mesh.edge_halfedge(e);
            let (a, b) = (mesh.origin(h), mesh.dest(h));
            let Some(t) = mesh.twin(h) else {
                emit(a, 0.5);
                emit(b, 0.5);
                return Ok(());
            };
            match scheme {
                SchemeId::CatmullClark => {
                    emit(a, 0.375);
                    emit(b, 0.375);
                    for g in [h, t] {
                        let n1 = mesh.next(g);
                        emit(mesh.dest(n1), 0.0625);
                        emit(mesh.dest(mesh.next(n1)), 0.0625);
                    }
                }
                SchemeId::ModifiedLoop(masks) if is_ep(mesh, a) || is_ep(mesh, b) => {
                    let (ep, spoke) = if is_ep(mesh, a) { (a, h) } else { (b, t) };
                    let m = masks.get(mesh.valence(ep))?;
                    emit(ep, m.gamma);
                    for (g, &w) in rotate_from(mesh, spoke).zip(&m.gamma_j) {
                        emit(mesh.dest(g), w);
                    }
                }
                _ => {
                    emit(a, 0.375);
                    emit(b, 0.375);
                    emit(mesh.origin(mesh.prev(h)), 0.125);
                    emit(mesh.origin(mesh.prev(t)), 0.125);
                }
            }
        }
        FinePoint::Vertex(v) => {
            if mesh.is_boundary(v) {
                if mesh.valence(v) <= 1 {
                    emit(v, 1.0);
                } else {
                    let (a, b) = boundary_neighbors(mesh, v);
                    emit(v, 0.75);
                    emit(a, 0.125);
                    emit(b, 0.125);
                }
                return Ok(());
            }
            let n = mesh.valence(v);
            let nf = n as f64;
            if mesh.is_quad() {
                emit(v, 1.0 - 7.0 / (4.0 * nf));
                let (we, wd) = (3.0 / (2.0 * nf * nf), 1.0 / (4.0 * nf * nf));
                for h in mesh.outgoing(v) {
                    emit(mesh.dest(h), we);
                    emit(mesh.dest(mesh.next(h)), wd);
                }
            } else {
                let (alpha, beta) = vertex_rule(scheme, n)?;
                emit(v, alpha);
                for h in mesh.outgoing(v) {
                    emit(mesh.dest(h), beta);
                }
            }
        }
    }
    Ok(())
}

/// Outgoing half-edges of the origin of `h`, counter-clockwise from `h`.
/// The origin must be interior.
fn rotate_from(mesh: &HalfEdgeMesh, h: usize) -> impl Iterator<Item = usize> + '_ {
    let n = mesh.valence(mesh.origin(h));
    std::iter::successors(Some(h), move |&g| mesh.rotate_ccw(g)).take(n)
}

/// Coarse stencil of the limit position of vertex `v`.
pub fn limit_stencil(
    mesh: &HalfEdgeMesh,
    scheme: &SchemeId,
    v: usize,
    emit: &mut impl FnMut(usize, f64),
) -> Result<()> {
    if mesh.is_boundary(v) {
        if mesh.valence(v) <= 1 {
            emit(v, 1.0);
        } else {
            let (a, b) = boundary_neighbors(mesh, v);
            emit(v, 4.0 / 6.0);
            emit(a, 1.0 / 6.0);
            emit(b, 1.0 / 6.0);
        }
        return Ok(());
    }
    let n = mesh.valence(v);
    let nf = n as f64;
    match scheme {
        SchemeId::CatmullClark => {
            let d = nf * (nf + 5.0);
            emit(v, nf / (nf + 5.0));
            for h in mesh.outgoing(v) {
                emit(mesh.dest(h), 4.0 / d);
                emit(mesh.dest(mesh.next(h)), 1.0 / d);
            }
        }
        SchemeId::Loop => {
            let beta = loop_beta(n);
            let tau = 1.0 / (0.375 / beta + nf);
            emit(v, 1.0 - nf * tau);
            for h in mesh.outgoing(v) {
                emit(mesh.dest(h), tau);
            }
        }
        SchemeId::ModifiedLoop(masks) => {
            if n != 6 {
                let m = masks.get(n)?;
                let tau = 1.0 / (m.gamma / m.beta + nf);
                emit(v, 1.0 - nf * tau);
                for h in mesh.outgoing(v) {
                    emit(mesh.dest(h), tau);
                }
            } else if mesh.neighbors(v).into_iter().any(|u| is_ep(mesh, u)) {
                // The spoke towards the extraordinary vertex uses the modified
                // edge rule, so the regular mask only applies after one more
                // local refinement.
                refine_stencil(mesh, scheme, FinePoint::Vertex(v), &mut |u, w| emit(u, 0.5 * w))?;
                for h in mesh.outgoing(v) {
                    refine_stencil(mesh, scheme, FinePoint::Edge(mesh.edge(h)), &mut |u, w| {
                        emit(u, w / 12.0)
                    })?;
                }
            } else {
                emit(v, 0.5);
                for h in mesh.outgoing(v) {
                    emit(mesh.dest(h), 1.0 / 12.0);
                }
            }
        }
    }
    Ok(())
}
