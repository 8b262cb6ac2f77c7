use std::collections::HashMap;
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mesh::{ordered_ring, HalfEdgeMesh, VertexTag};
use crate::schemes::SchemeId;
use crate::Point3;

use super::engine::{bfs, Engine, LocalProblem};
use super::weights::{weights_for, WeightProfile};

/// How a functional was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "target")]
pub enum Provenance {
    ClosedFormEp,
    ClosedFormRegular,
    /// Row of the local system hosted at another vertex (or at the vertex
    /// itself when no closed form applies).
    TargetPoint(usize),
    CornerSystem,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    /// Vertex of the once-refined mesh whose limit position is sampled.
    pub fine: usize,
    #[serde(serialize_with = "ser_point")]
    pub point: Point3,
    pub weight: f64,
}

fn ser_point<S: serde::Serializer>(p: &Point3, s: S) -> std::result::Result<S::Ok, S::Error> {
    [p.x, p.y, p.z].serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Functional {
    pub owner: usize,
    pub provenance: Provenance,
    pub samples: Vec<Sample>,
}

impl Functional {
    pub fn weight_sum(&self) -> f64 {
        self.samples.iter().map(|s| s.weight).sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasiInterpolant {
    pub scheme: &'static str,
    pub num_vertices: usize,
    pub functionals: Vec<Functional>,
    /// Vertices whose basis functions vanish on the active region.
    pub skipped: Vec<usize>,
}

impl QuasiInterpolant {
    /// Coefficients from a function on the surface. Vertices without a
    /// functional get 0.
    pub fn apply(&self, f: impl Fn(&Point3) -> f64) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.num_vertices];
        for fun in &self.functionals {
            let mut acc = 0.0;
            for s in &fun.samples {
                let y = f(&s.point);
                if !y.is_finite() {
                    return Err(Error::Evaluation { x: s.point.x, y: s.point.y, z: s.point.z });
                }
                acc += s.weight * y;
            }
            out[fun.owner] = acc;
        }
        Ok(out)
    }

    /// Coefficients from values already given at the fine vertices.
    pub fn apply_values(&self, fine_values: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.num_vertices];
        for fun in &self.functionals {
            out[fun.owner] = fun.samples.iter().map(|s| s.weight * fine_values[s.fine]).sum();
        }
        out
    }

    pub fn functional(&self, v: usize) -> Option<&Functional> {
        self.functionals
            .binary_search_by_key(&v, |f| f.owner)
            .ok()
            .map(|i| &self.functionals[i])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Builds functionals vertex by vertex, sharing local problems between
/// vertices that use the same host.
pub struct Builder<'a> {
    pub engine: &'a Engine,
    hosts: HashMap<usize, Option<Rc<LocalProblem>>>,
    profiles: HashMap<usize, WeightProfile>,
}

impl<'a> Builder<'a> {
    pub fn new(engine: &'a Engine) -> Self {
        Builder { engine, hosts: HashMap::new(), profiles: HashMap::new() }
    }

    fn host(&mut self, t: usize) -> Option<Rc<LocalProblem>> {
        if let Some(h) = self.hosts.get(&t) {
            return h.clone();
        }
        let h = self.engine.host(t).ok().map(Rc::new);
        self.hosts.insert(t, h.clone());
        h
    }

    /// Host `t` can serve `v` if its system is square, invertible and
    /// involves `v`.
    fn serves(&mut self, t: usize, v: usize) -> bool {
        self.host(t).is_some_and(|h| h.contains(v))
    }

    fn profile(&mut self, n: usize) -> Result<WeightProfile> {
        if let Some(p) = self.profiles.get(&n) {
            return Ok(p.clone());
        }
        let p = weights_for(&self.engine.scheme, n)?;
        self.profiles.insert(n, p.clone());
        Ok(p)
    }

    fn samples(&self, rows: &[usize], weights: &[f64]) -> Vec<Sample> {
        rows.iter()
            .zip(weights)
            .map(|(&x, &w)| Sample { fine: x, point: self.engine.limit[x], weight: w })
            .collect()
    }

    fn closed_form(&mut self, v: usize) -> Result<Vec<Sample>> {
        let mesh = &self.engine.coarse;
        let ring = ordered_ring(mesh, v, 1)?;
        let profile = self.profile(ring.valence())?;
        let rows: Vec<usize> = ring.interp.iter().map(|p| p.index(mesh)).collect();
        Ok(self.samples(&rows, &profile.expand(&ring)))
    }

    fn via_host(&mut self, t: usize, v: usize) -> Result<Vec<Sample>> {
        let h = self.host(t).ok_or(Error::SingularSystem(f64::INFINITY))?;
        let w = h.weights_for(v)?;
        Ok(self.samples(&h.rows, &w))
    }

    /// Interior vertex whose own neighbourhood carries a closed form: use it
    /// if it solves the actual local system, otherwise solve numerically.
    fn extraordinary(&mut self, v: usize) -> Result<Functional> {
        if let (Ok(samples), Some(h)) = (self.closed_form(v), self.host(v)) {
            let w: Vec<f64> = samples.iter().map(|s| s.weight).collect();
            if let Ok(exact) = h.weights_for(v) {
                let close = w.iter().zip(&exact).all(|(a, b)| (a - b).abs() <= 1e-9 * (1.0 + b.abs()));
                if close {
                    return Ok(Functional { owner: v, provenance: Provenance::ClosedFormEp, samples });
                }
                let samples = self.samples(&h.rows, &exact);
                return Ok(Functional { owner: v, provenance: Provenance::TargetPoint(v), samples });
            }
        }
        self.fallback(v, &[])
    }

    fn near_ep(&mut self, v: usize) -> Result<Functional> {
        let VertexTag::RegularAdjacentToEp { ring, ep } = self.engine.class.tag(v) else {
            unreachable!("caller checks the tag")
        };
        let mut candidates = preferred_targets(self.engine, v, ep, ring);
        candidates.extend(nearby_clean(self.engine, v, 3));
        for t in candidates {
            if self.serves(t, v) {
                let samples = self.via_host(t, v)?;
                return Ok(Functional { owner: v, provenance: Provenance::TargetPoint(t), samples });
            }
        }
        self.fallback(v, &[ep])
    }

    fn boundary(&mut self, v: usize) -> Result<Functional> {
        let engine = self.engine;
        let p = engine.coarse.position(v);
        let mut candidates = nearby_clean(engine, v, 3);
        candidates.sort_by(|&a, &b| {
            let (da, db) = ((engine.coarse.position(a) - p).norm(), (engine.coarse.position(b) - p).norm());
            da.total_cmp(&db).then(a.cmp(&b))
        });
        for t in candidates {
            if self.serves(t, v) {
                let samples = self.via_host(t, v)?;
                return Ok(Functional { owner: v, provenance: Provenance::TargetPoint(t), samples });
            }
        }
        self.fallback(v, &[])
    }

    /// Extraordinary hosts first, then a corner system grown around `v`.
    fn fallback(&mut self, v: usize, eps: &[usize]) -> Result<Functional> {
        for &t in eps {
            if self.serves(t, v) {
                let samples = self.via_host(t, v)?;
                return Ok(Functional { owner: v, provenance: Provenance::TargetPoint(t), samples });
            }
        }
        let h = self.engine.corner_problem(v)?;
        let w = h.weights_for(v)?;
        Ok(Functional { owner: v, provenance: Provenance::CornerSystem, samples: self.samples(&h.rows, &w) })
    }

    pub fn functional_for(&mut self, v: usize) -> Result<Functional> {
        match self.engine.class.tag(v) {
            VertexTag::RegularInterior => {
                let samples = self.closed_form(v)?;
                Ok(Functional { owner: v, provenance: Provenance::ClosedFormRegular, samples })
            }
            VertexTag::ExtraordinaryInterior => self.extraordinary(v),
            VertexTag::RegularAdjacentToEp { .. } => self.near_ep(v),
            VertexTag::MeshBoundary | VertexTag::SurfaceBoundary => self.boundary(v),
        }
    }
}

/// Interior vertices with a clean neighbourhood within `depth` edges of
/// `v`, by increasing index.
fn nearby_clean(engine: &Engine, v: usize, depth: usize) -> Vec<usize> {
    let dist = bfs(&engine.coarse, v, depth, engine.coarse.is_quad());
    (0..dist.len())
        .filter(|&u| dist[u] <= depth && u != v)
        .filter(|&u| engine.class.tag(u) == VertexTag::RegularInterior)
        .collect()
}

fn rotate(mesh: &HalfEdgeMesh, h: usize, k: usize) -> Option<usize> {
    (0..k).try_fold(h, |g, _| mesh.rotate_ccw(g))
}

/// Symmetric target choices for `v` near extraordinary vertex `ep`, best
/// first.
pub fn preferred_targets(engine: &Engine, v: usize, ep: usize, ring: u8) -> Vec<usize> {
    let m = &engine.coarse;
    let mut out = Vec::new();
    match engine.scheme {
        SchemeId::CatmullClark => {
            if let Some(h) = m.halfedge(v, ep) {
                // Straight on, away from the extraordinary vertex.
                out.extend(rotate(m, h, 2).map(|g| m.dest(g)));
            } else if let Some(h) = m.outgoing(v).find(|&h| m.dest(m.next(h)) == ep) {
                // Diagonal of the opposite face.
                out.extend(rotate(m, h, 2).map(|g| m.dest(m.next(g))));
            }
        }
        SchemeId::Loop => {
            if let Some(h) = m.halfedge(v, ep) {
                // Reflect the extraordinary vertex across the edge from v to
                // the third vertex of either triangle on the spoke.
                out.extend(m.rotate_ccw(h).map(|g| m.dest(m.next(g))));
                if let Some(t) = m.twin(h) {
                    let g = m.next(t);
                    out.extend(m.twin(g).map(|g| m.dest(m.next(g))));
                }
            }
        }
        SchemeId::ModifiedLoop(_) => {
            if ring == 1 {
                if let Some(h) = m.halfedge(v, ep) {
                    let step = rotate(m, h, 3).and_then(|g| m.twin(g)).and_then(|g| rotate(m, g, 3));
                    out.extend(step.map(|g| m.dest(g)));
                }
            } else {
                let mut closer: Vec<usize> =
                    m.neighbors(v).into_iter().filter(|&u| m.halfedge(u, ep).is_some()).collect();
                closer.sort_unstable();
                for u in closer {
                    out.extend(m.halfedge(v, u).and_then(|h| rotate(m, h, 3)).map(|g| m.dest(g)));
                }
            }
        }
    }
    out
}

pub fn build(mesh: &HalfEdgeMesh, scheme: &SchemeId) -> Result<QuasiInterpolant> {
    let engine = Engine::new(mesh.clone(), scheme.clone())?;
    build_with(&engine)
}

pub fn build_with(engine: &Engine) -> Result<QuasiInterpolant> {
    let active = engine.active_vertices()?;
    let mut builder = Builder::new(engine);
    let mut functionals = Vec::new();
    let mut skipped = Vec::new();
    for (v, &is_active) in active.iter().enumerate() {
        if !is_active {
            skipped.push(v);
            continue;
        }
        functionals.push(builder.functional_for(v).map_err(|e| e.at(v))?);
    }
    Ok(QuasiInterpolant {
        scheme: engine.scheme.name(),
        num_vertices: engine.coarse.num_vertices(),
        functionals,
        skipped,
    })
}
