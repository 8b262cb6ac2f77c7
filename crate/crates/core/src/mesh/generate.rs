//! Planar test meshes built from sector fans.

use std::f64::consts::PI;

use crate::mesh::PolyMesh;
use crate::Point3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Quad,
    Tri,
}

impl Family {
    pub fn regular_valence(self) -> usize {
        match self {
            Family::Quad => 4,
            Family::Tri => 6,
        }
    }
}

fn dyadic(x: f64) -> f64 {
    const SCALE: f64 = (1u64 << 20) as f64;
    (x * SCALE).round() / SCALE
}

/// `n` sectors of angle `2*pi/n` around the origin, each split into `m`
/// layers: quads over the parallelogram `[0,m]^2` or triangles over
/// `a + b <= m` in sector coordinates. The fan vertex is vertex 0 and has
/// valence `n`; all other interior vertices are regular. The outer radius
/// along each sector ray is 1.
pub fn fan_mesh(family: Family, n: usize, m: usize) -> PolyMesh {
    assert!(n >= 3 && m >= 1);
    let dirs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let in_sector = |a: usize, b: usize| match family {
        Family::Quad => a <= m && b <= m,
        Family::Tri => a + b <= m,
    };
    // Owned points per sector: a >= 1. Points on the ray a = 0 belong to the
    // previous sector's a-axis.
    let owned: Vec<(usize, usize)> = (1..=m)
        .flat_map(|a| (0..=m).map(move |b| (a, b)))
        .filter(|&(a, b)| in_sector(a, b))
        .collect();
    let per = owned.len();
    let mut slot = vec![usize::MAX; (m + 1) * (m + 1)];
    for (i, &(a, b)) in owned.iter().enumerate() {
        slot[a * (m + 1) + b] = i;
    }

    let mut vertices = vec![Point3::zeros()];
    for j in 0..n {
        let (u, w) = (dirs[j], dirs[(j + 1) % n]);
        for &(a, b) in &owned {
            let (a, b) = (a as f64 / m as f64, b as f64 / m as f64);
            vertices.push(Point3::new(dyadic(a * u.0 + b * w.0), dyadic(a * u.1 + b * w.1), 0.0));
        }
    }
    let id = |j: usize, a: usize, b: usize| -> usize {
        if a == 0 && b == 0 {
            0
        } else if a == 0 {
            1 + ((j + 1) % n) * per + slot[b * (m + 1)]
        } else {
            1 + j * per + slot[a * (m + 1) + b]
        }
    };

    let mut faces = Vec::new();
    for j in 0..n {
        for a in 0..m {
            for b in 0..m {
                match family {
                    Family::Quad => {
                        faces.push(vec![id(j, a, b), id(j, a + 1, b), id(j, a + 1, b + 1), id(j, a, b + 1)])
                    }
                    Family::Tri => {
                        if a + b < m {
                            faces.push(vec![id(j, a, b), id(j, a + 1, b), id(j, a, b + 1)]);
                        }
                        if a + b + 1 < m {
                            faces.push(vec![id(j, a + 1, b), id(j, a + 1, b + 1), id(j, a, b + 1)]);
                        }
                    }
                }
            }
        }
    }
    PolyMesh { vertices, faces }
}

/// Axis-aligned `nx` by `ny` quad grid with unit spacing, row-major vertices.
pub fn grid_mesh(nx: usize, ny: usize) -> PolyMesh {
    let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            vertices.push(Point3::new(i as f64, j as f64, 0.0));
        }
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut faces = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            faces.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    PolyMesh { vertices, faces }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::HalfEdgeMesh;

    #[test]
    fn fan_valences() {
        for family in [Family::Quad, Family::Tri] {
            for n in 3..=9 {
                let m = HalfEdgeMesh::new(&fan_mesh(family, n, 4)).unwrap();
                assert_eq!(m.valence(0), n);
                for v in 1..m.num_vertices() {
                    if !m.is_boundary(v) {
                        assert_eq!(m.valence(v), family.regular_valence(), "{family:?} n={n} v={v}");
                    }
                }
                let chi = m.num_vertices() as i64 - m.num_edges() as i64 + m.num_faces() as i64;
                assert_eq!(chi, 1);
            }
        }
    }

    #[test]
    fn faces_are_counter_clockwise() {
        for family in [Family::Quad, Family::Tri] {
            let mesh = fan_mesh(family, 5, 3);
            for f in &mesh.faces {
                let p: Vec<_> = f.iter().map(|&i| mesh.vertices[i]).collect();
                let mut area = 0.0;
                for k in 0..p.len() {
                    let (a, b) = (p[k], p[(k + 1) % p.len()]);
                    area += a.x * b.y - a.y * b.x;
                }
                assert!(area > 0.0);
            }
        }
    }
}
