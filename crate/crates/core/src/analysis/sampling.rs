use crate::error::{Error, Result};
use crate::mesh::{ActiveRegion, HalfEdgeMesh};
use crate::schemes::{limit_positions, limit_values, refine, refine_values, SchemeId};
use crate::Point3;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub points: Vec<Point3>,
    pub values: Vec<f64>,
    /// Quadrature weights; they sum to the area of the sampled region.
    pub weights: Vec<f64>,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// A mesh and its successive refinements, with a fixed sample region on the
/// finest one: the descendants of the base mesh's active faces.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    pub scheme: SchemeId,
    pub levels: Vec<HalfEdgeMesh>,
    /// Finest-level vertices touching the region, increasing.
    pub sample_vertices: Vec<usize>,
    pub points: Vec<Point3>,
    pub weights: Vec<f64>,
}

impl Hierarchy {
    pub fn new(base: HalfEdgeMesh, scheme: &SchemeId, depth: usize) -> Result<Self> {
        scheme.check_mesh(&base)?;
        let active = ActiveRegion::of(&base);
        let mut levels = vec![base];
        for _ in 0..depth {
            let next = refine(levels.last().unwrap(), scheme)?;
            levels.push(next);
        }
        let fine = levels.last().unwrap();
        let limit = limit_positions(fine, scheme)?;
        // Each refinement splits face f into faces 4f..4f+3.
        let shift = 2 * depth as u32;
        let mut weight = vec![0.0; fine.num_vertices()];
        let share = 1.0 / fine.arity() as f64;
        for f in 0..fine.num_faces() {
            if !active.is_active(f >> shift) {
                continue;
            }
            let vs: Vec<usize> = fine.face_vertices(f).collect();
            let area = polygon_area(vs.iter().map(|&v| limit[v]));
            for v in vs {
                weight[v] += share * area;
            }
        }
        let sample_vertices: Vec<usize> = (0..weight.len()).filter(|&v| weight[v] > 0.0).collect();
        let points = sample_vertices.iter().map(|&v| limit[v]).collect();
        let weights = sample_vertices.iter().map(|&v| weight[v]).collect();
        Ok(Hierarchy { scheme: scheme.clone(), levels, sample_vertices, points, weights })
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    /// Limit values at every finest-level vertex of the function with
    /// coefficients `c` on level `level`.
    pub fn limit_all(&self, level: usize, c: &[f64]) -> Result<Vec<f64>> {
        let mut values = c.to_vec();
        for mesh in &self.levels[level..self.depth()] {
            values = refine_values(mesh, &self.scheme, &values)?;
        }
        limit_values(self.levels.last().unwrap(), &self.scheme, &values)
    }

    /// Limit values at the sample points.
    pub fn sample(&self, level: usize, c: &[f64]) -> Result<Vec<f64>> {
        let lim = self.limit_all(level, c)?;
        Ok(self.sample_vertices.iter().map(|&v| lim[v]).collect())
    }

    pub fn sample_set(&self, level: usize, c: &[f64]) -> Result<SampleSet> {
        Ok(SampleSet { points: self.points.clone(), values: self.sample(level, c)?, weights: self.weights.clone() })
    }
}

/// Area of a planar or mildly curved polygon, fanned from its first vertex.
fn polygon_area(mut pts: impl Iterator<Item = Point3>) -> f64 {
    let p0 = pts.next().expect("face has vertices");
    let rest: Vec<Point3> = pts.collect();
    rest.windows(2).map(|w| 0.5 * (w[0] - p0).cross(&(w[1] - p0)).norm()).sum()
}

/// Refines `mesh` and `coefficients` `k` times and samples the limit
/// function over the descendants of the active faces.
pub fn dense_samples(mesh: &HalfEdgeMesh, coefficients: &[f64], scheme: &SchemeId, k: usize) -> Result<SampleSet> {
    Hierarchy::new(mesh.clone(), scheme, k)?.sample_set(0, coefficients)
}

/// Relative weighted-RMS and max errors of `approx` against `exact`.
pub fn relative_errors(approx: &[f64], exact: &[f64], weights: &[f64]) -> Result<(f64, f64)> {
    let (mut num2, mut den2, mut numi, mut deni) = (0.0, 0.0, 0.0f64, 0.0f64);
    for ((a, e), w) in approx.iter().zip(exact).zip(weights) {
        let d = a - e;
        num2 += w * d * d;
        den2 += w * e * e;
        numi = numi.max(d.abs());
        deni = deni.max(e.abs());
    }
    if den2 == 0.0 || deni == 0.0 {
        return Err(Error::DegenerateFunction);
    }
    Ok(((num2 / den2).sqrt(), numi / deni))
}

/// `(E2, Einf)` of the subdivision function with coefficients `qi_coeffs`
/// against `f`, sampled at depth `k`.
pub fn errors(
    qi_coeffs: &[f64],
    f: impl Fn(&Point3) -> f64,
    mesh: &HalfEdgeMesh,
    scheme: &SchemeId,
    k: usize,
) -> Result<(f64, f64)> {
    let s = dense_samples(mesh, qi_coeffs, scheme, k)?;
    let exact: Vec<f64> = s.points.iter().map(&f).collect();
    relative_errors(&s.values, &exact, &s.weights)
}
