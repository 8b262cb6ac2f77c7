//! Local subdivision (`S`) and limit (`L`) matrices around one vertex.
//!
//! Rows and columns follow [`OrderedRing`](crate::mesh::OrderedRing): the
//! centre first, then one block per sector. The matrices are block
//! circulant; row block `j` couples to sector `j` through the `*0` blocks,
//! to sector `j+1` through `*1` and to sector `j-1` through `*2`.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::mesh::generate::fan_mesh;
use crate::mesh::{ordered_ring, HalfEdgeMesh};
use crate::numeric::{matmul, Exact, Weight};
use crate::schemes::{
    limit_stencil, limit_values, loop_beta, loop_beta_exact, refine_topology, refine_values, SchemeId,
};

/// Coefficients that vary with the valence.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalRule<T> {
    CatmullClark,
    Loop { alpha: T, beta: T },
    ModifiedLoop { alpha: T, beta: T, gamma: T, gamma_j: Vec<T> },
}

impl LocalRule<f64> {
    pub fn for_scheme(scheme: &SchemeId, n: usize) -> Result<Self> {
        Ok(match scheme {
            SchemeId::CatmullClark => LocalRule::CatmullClark,
            SchemeId::Loop => {
                let beta = loop_beta(n);
                LocalRule::Loop { alpha: 1.0 - n as f64 * beta, beta }
            }
            SchemeId::ModifiedLoop(masks) => {
                if n == 6 {
                    // Regular vertices use Loop's rules.
                    return Self::for_scheme(&SchemeId::Loop, n);
                }
                let m = masks.get(n)?;
                LocalRule::ModifiedLoop {
                    alpha: m.alpha,
                    beta: m.beta,
                    gamma: m.gamma,
                    gamma_j: m.gamma_j.clone(),
                }
            }
        })
    }
}

impl LocalRule<Exact> {
    /// Exact Loop weights where they are rational (`n` in 3, 4, 6).
    pub fn loop_exact(n: usize) -> Option<Self> {
        let beta = loop_beta_exact(n)?;
        let alpha = Exact::int(1) - Exact::int(n as i64) * beta.clone();
        Some(LocalRule::Loop { alpha, beta })
    }
}

/// Position of a matrix row or column in sector coordinates, doubled so
/// that midpoints are integral. The centre has `sector == None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalSlot {
    pub sector: Option<usize>,
    pub a2: u8,
    pub b2: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalSystem<T: Weight> {
    pub n: usize,
    pub s: DMatrix<T>,
    pub l: DMatrix<T>,
    pub a: DMatrix<T>,
    pub controls: Vec<LocalSlot>,
    pub fine: Vec<LocalSlot>,
    pub interp: Vec<LocalSlot>,
}

impl<T: Weight> LocalSystem<T> {
    pub fn assemble(rule: &LocalRule<T>, n: usize) -> Self {
        let quad = matches!(rule, LocalRule::CatmullClark);
        let s = local_s(rule, n);
        let l = local_l(rule, n);
        let a = matmul(&l, &s);
        let slots = |per: &[(u8, u8)]| {
            std::iter::once(LocalSlot { sector: None, a2: 0, b2: 0 })
                .chain((0..n).flat_map(|j| {
                    per.iter().map(move |&(a2, b2)| LocalSlot { sector: Some(j), a2, b2 })
                }))
                .collect::<Vec<_>>()
        };
        let (controls, fine, interp) = if quad {
            (
                slots(&CC_CONTROLS),
                slots(&[(1, 0), (2, 0), (3, 0), (1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (3, 3)]),
                slots(&[(1, 0), (2, 0), (1, 1), (2, 1), (1, 2), (2, 2)]),
            )
        } else {
            (
                slots(&[(2, 0), (4, 0), (2, 2)]),
                slots(&[(1, 0), (2, 0), (3, 0), (1, 1), (2, 1), (1, 2)]),
                slots(&[(1, 0), (2, 0), (1, 1)]),
            )
        };
        LocalSystem { n, s, l, a, controls, fine, interp }
    }
}

const CC_CONTROLS: [(u8, u8); 6] = [(2, 0), (4, 0), (2, 2), (4, 2), (2, 4), (4, 4)];

fn table<T: Weight>(rows: &[&[i64]], den: i64) -> DMatrix<T> {
    DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| T::frac(rows[i][j], den))
}

struct Blocks<T: Weight> {
    c0: T,
    /// 1 x per-sector columns.
    c1: DMatrix<T>,
    /// per-sector rows x 1.
    c2: DMatrix<T>,
    b0: DMatrix<T>,
    b1: DMatrix<T>,
    b2: DMatrix<T>,
}

fn circulant<T: Weight>(n: usize, b: &Blocks<T>) -> DMatrix<T> {
    let (r, c) = (b.b0.nrows(), b.b0.ncols());
    let mut m = DMatrix::from_element(1 + n * r, 1 + n * c, T::zero());
    m[(0, 0)] = b.c0.clone();
    for j in 0..n {
        for k in 0..c {
            m[(0, 1 + j * c + k)] = b.c1[(0, k)].clone();
        }
        for i in 0..r {
            m[(1 + j * r + i, 0)] = b.c2[(i, 0)].clone();
        }
        for (blk, col) in [(&b.b0, j), (&b.b1, (j + 1) % n), (&b.b2, (j + n - 1) % n)] {
            for i in 0..r {
                for k in 0..c {
                    let cell = &mut m[(1 + j * r + i, 1 + col * c + k)];
                    *cell = cell.clone() + blk[(i, k)].clone();
                }
            }
        }
    }
    m
}

fn valence<T: Weight>(n: usize) -> T {
    T::int(n as i64)
}

/// Subdivision matrix: rows are the refined net (`12n+1` or `6n+1`), columns
/// the control vertices (`6n+1` or `3n+1`).
pub fn local_s<T: Weight>(rule: &LocalRule<T>, n: usize) -> DMatrix<T> {
    match rule {
        LocalRule::CatmullClark => {
            let nn: T = valence(n);
            let blocks = Blocks {
                c0: T::one() - T::frac(7, 4) / nn.clone(),
                c1: table::<T>(&[&[6, 0, 1, 0, 0, 0]], 4).map(|x| x / (nn.clone() * nn.clone())),
                c2: table(&[&[24], &[6], &[0], &[16], &[4], &[0], &[4], &[1], &[0], &[0], &[0], &[0]], 64),
                b0: table(
                    &[
                        &[24, 0, 4, 0, 0, 0],
                        &[36, 6, 6, 1, 0, 0],
                        &[24, 24, 4, 4, 0, 0],
                        &[16, 0, 16, 0, 0, 0],
                        &[24, 4, 24, 4, 0, 0],
                        &[16, 16, 16, 16, 0, 0],
                        &[4, 0, 24, 0, 4, 0],
                        &[6, 1, 36, 6, 6, 1],
                        &[4, 4, 24, 24, 4, 4],
                        &[0, 0, 16, 0, 16, 0],
                        &[0, 0, 24, 4, 24, 4],
                        &[0, 0, 16, 16, 16, 16],
                    ],
                    64,
                ),
                b1: table(
                    &[
                        &[4, 0, 0, 0, 0, 0],
                        &[1, 0, 0, 0, 0, 0],
                        &[0, 0, 0, 0, 0, 0],
                        &[16, 0, 0, 0, 0, 0],
                        &[4, 0, 0, 0, 0, 0],
                        &[0, 0, 0, 0, 0, 0],
                        &[24, 4, 0, 0, 0, 0],
                        &[6, 1, 0, 0, 0, 0],
                        &[0, 0, 0, 0, 0, 0],
                        &[16, 16, 0, 0, 0, 0],
                        &[4, 4, 0, 0, 0, 0],
                        &[0, 0, 0, 0, 0, 0],
                    ],
                    64,
                ),
                b2: {
                    let mut b = DMatrix::from_element(12, 6, T::zero());
                    let top = table::<T>(&[&[4, 0, 4, 0, 0, 0], &[1, 0, 6, 0, 1, 0], &[0, 0, 4, 0, 4, 0]], 64);
                    b.rows_mut(0, 3).copy_from(&top);
                    b
                },
            };
            circulant(n, &blocks)
        }
        LocalRule::Loop { alpha, beta } => loop_s(alpha, beta, n),
        LocalRule::ModifiedLoop { alpha, beta, gamma, gamma_j } => {
            let mut s = loop_s(alpha, beta, n);
            for j in 0..n {
                let row = 1 + 6 * j;
                for c in 0..s.ncols() {
                    s[(row, c)] = T::zero();
                }
                s[(row, 0)] = gamma.clone();
                for (k, g) in gamma_j.iter().enumerate() {
                    s[(row, 1 + 3 * ((j + k) % n))] = g.clone();
                }
            }
            s
        }
    }
}

fn loop_s<T: Weight>(alpha: &T, beta: &T, n: usize) -> DMatrix<T> {
    let blocks = Blocks {
        c0: alpha.clone(),
        c1: DMatrix::from_row_slice(1, 3, &[beta.clone(), T::zero(), T::zero()]),
        c2: table(&[&[6], &[1], &[0], &[2], &[0], &[0]], 16),
        b0: table(&[&[6, 0, 0], &[10, 1, 1], &[6, 6, 2], &[6, 0, 2], &[6, 2, 6], &[2, 0, 6]], 16),
        b1: table(&[&[2, 0, 0], &[1, 0, 0], &[0, 0, 0], &[6, 0, 0], &[2, 0, 0], &[6, 2, 0]], 16),
        b2: table(&[&[2, 0, 0], &[1, 0, 1], &[0, 0, 2], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0]], 16),
    };
    circulant(n, &blocks)
}

/// Limit matrix: rows are interpolation slots (`6n+1` or `3n+1`), columns
/// the refined net.
pub fn local_l<T: Weight>(rule: &LocalRule<T>, n: usize) -> DMatrix<T> {
    match rule {
        LocalRule::CatmullClark => {
            let nn: T = valence(n);
            let d = nn.clone() * (nn.clone() + T::int(5));
            let mut c1 = DMatrix::from_element(1, 12, T::zero());
            c1[(0, 0)] = T::int(4) / d.clone();
            c1[(0, 3)] = T::one() / d;
            let blocks = Blocks {
                c0: nn.clone() / (nn + T::int(5)),
                c1,
                c2: table(&[&[4], &[0], &[1], &[0], &[0], &[0]], 36),
                b0: table::<T>(
                    &[
                        &[16, 4, 4, 1, 0, 0],
                        &[4, 16, 1, 4, 0, 0],
                        &[0, 4, 0, 1, 0, 0],
                        &[4, 1, 16, 4, 4, 1],
                        &[1, 4, 4, 16, 1, 4],
                        &[0, 1, 0, 4, 0, 1],
                        &[0, 0, 4, 1, 16, 4],
                        &[0, 0, 1, 4, 4, 16],
                        &[0, 0, 0, 1, 0, 4],
                        &[0, 0, 0, 0, 4, 1],
                        &[0, 0, 0, 0, 1, 4],
                        &[0, 0, 0, 0, 0, 1],
                    ],
                    36,
                )
                .transpose(),
                b1: {
                    let mut t = DMatrix::from_element(12, 6, T::zero());
                    t.rows_mut(0, 3).copy_from(&table::<T>(
                        &[&[1, 0, 4, 0, 1, 0], &[0, 0, 1, 0, 4, 0], &[0, 0, 0, 0, 1, 0]],
                        36,
                    ));
                    t.transpose()
                },
                b2: {
                    let mut t = DMatrix::from_element(12, 6, T::zero());
                    t[(0, 0)] = T::frac(1, 36);
                    t[(3, 0)] = T::frac(4, 36);
                    t[(3, 1)] = T::frac(1, 36);
                    t[(6, 0)] = T::frac(1, 36);
                    t[(6, 1)] = T::frac(4, 36);
                    t[(9, 1)] = T::frac(1, 36);
                    t.transpose()
                },
            };
            circulant(n, &blocks)
        }
        LocalRule::Loop { beta, .. } => {
            let nn: T = valence(n);
            let tau = T::one() / (T::frac(3, 8) / beta.clone() + nn);
            loop_l(tau, n)
        }
        LocalRule::ModifiedLoop { beta, gamma, gamma_j, .. } => {
            let nn: T = valence(n);
            let tau = T::one() / (gamma.clone() / beta.clone() + nn);
            let mut l = loop_l(tau, n);
            let twelfth = |x: T| x / T::int(12);
            for j in 0..n {
                let row = 1 + 3 * j;
                l[(row, 0)] = twelfth(gamma.clone() + T::frac(5, 8));
                for k in 0..n {
                    let mut w = gamma_j[k].clone();
                    if k == 0 {
                        w = w + T::frac(45, 8);
                    } else if k == 1 || k == n - 1 {
                        w = w + T::frac(7, 8);
                    }
                    l[(row, 1 + 6 * ((j + k) % n))] = twelfth(w);
                }
            }
            l
        }
    }
}

fn loop_l<T: Weight>(tau: T, n: usize) -> DMatrix<T> {
    let nn: T = valence(n);
    let mut c1 = DMatrix::from_element(1, 6, T::zero());
    c1[(0, 0)] = tau.clone();
    let blocks = Blocks {
        c0: T::one() - nn * tau,
        c1,
        c2: table(&[&[1], &[0], &[0]], 12),
        b0: table::<T>(&[&[6, 1, 1], &[1, 6, 1], &[0, 1, 0], &[1, 1, 6], &[0, 1, 1], &[0, 0, 1]], 12).transpose(),
        b1: table::<T>(&[&[1, 0, 1], &[0, 0, 1], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0], &[0, 0, 0]], 12).transpose(),
        b2: table::<T>(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0], &[1, 1, 0], &[0, 0, 0], &[0, 1, 0]], 12).transpose(),
    };
    circulant(n, &blocks)
}

pub fn local_a<T: Weight>(rule: &LocalRule<T>, n: usize) -> DMatrix<T> {
    matmul(&local_l(rule, n), &local_s(rule, n))
}

fn oracle_mesh(scheme: &SchemeId, n: usize) -> Result<(HalfEdgeMesh, crate::mesh::OrderedRing)> {
    let mesh = HalfEdgeMesh::new(&fan_mesh(scheme.family(), n, 4))?;
    let ring = ordered_ring(&mesh, 0, 2)?;
    Ok((mesh, ring))
}

/// `A` from explicit refinement of unit coefficient vectors on a fan mesh:
/// column `k` holds the limit values at the interpolation slots of the net
/// that is 1 at control `k` and 0 elsewhere.
pub fn oracle_a(scheme: &SchemeId, n: usize) -> Result<DMatrix<f64>> {
    let (mesh, ring) = oracle_mesh(scheme, n)?;
    let fine_mesh = refine_topology(&mesh);
    let mut a = DMatrix::zeros(ring.interp.len(), ring.controls.len());
    for (k, &c) in ring.controls.iter().enumerate() {
        let mut unit = vec![0.0; mesh.num_vertices()];
        unit[c] = 1.0;
        let fine = refine_values(&mesh, scheme, &unit)?;
        let lim = limit_values(&fine_mesh, scheme, &fine)?;
        for (i, p) in ring.interp.iter().enumerate() {
            a[(i, k)] = lim[p.index(&mesh)];
        }
    }
    Ok(a)
}

/// `S` read off the same unit-vector refinements.
pub fn oracle_s(scheme: &SchemeId, n: usize) -> Result<DMatrix<f64>> {
    let (mesh, ring) = oracle_mesh(scheme, n)?;
    let mut s = DMatrix::zeros(ring.fine.len(), ring.controls.len());
    for (k, &c) in ring.controls.iter().enumerate() {
        let mut unit = vec![0.0; mesh.num_vertices()];
        unit[c] = 1.0;
        let fine = refine_values(&mesh, scheme, &unit)?;
        for (i, p) in ring.fine.iter().enumerate() {
            s[(i, k)] = fine[p.index(&mesh)];
        }
    }
    Ok(s)
}

/// `L` from the limit stencils of the refined fan mesh. Fails if some stencil
/// reaches outside the local refined net.
pub fn oracle_l(scheme: &SchemeId, n: usize) -> Result<DMatrix<f64>> {
    let (mesh, ring) = oracle_mesh(scheme, n)?;
    let fine_mesh = refine_topology(&mesh);
    let col_of: std::collections::HashMap<usize, usize> =
        ring.fine.iter().enumerate().map(|(i, p)| (p.index(&mesh), i)).collect();
    let mut l = DMatrix::zeros(ring.interp.len(), ring.fine.len());
    for (i, p) in ring.interp.iter().enumerate() {
        let mut outside = false;
        limit_stencil(&fine_mesh, scheme, p.index(&mesh), &mut |u, w| match col_of.get(&u) {
            Some(&c) => l[(i, c)] += w,
            None => outside |= w != 0.0,
        })?;
        if outside {
            return Err(crate::Error::IncompleteRing { vertex: 0, depth: 2 });
        }
    }
    Ok(l)
}
