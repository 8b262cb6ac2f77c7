use serde::Serialize;

use crate::error::{Error, Result};
use crate::mesh::generate::{fan_mesh, Family};
use crate::mesh::{HalfEdgeMesh, PolyMesh};
use crate::projector::{build_with, Engine};
use crate::schemes::SchemeId;
use crate::Point3;

use super::sampling::{relative_errors, Hierarchy};

/// `exp(-6 (x^2 + y^2))`; `z` is ignored.
pub fn test_function(p: &Point3) -> f64 {
    (-6.0 * (p.x * p.x + p.y * p.y)).exp()
}

/// Layers of regular faces around the extraordinary vertex in the default
/// test meshes.
pub const TEST_LAYERS: usize = 4;

/// Planar mesh of radius 1 with one interior vertex of valence `n` at the
/// origin and regular layers around it.
pub fn make_test_mesh(family: Family, n: usize) -> Result<PolyMesh> {
    make_test_mesh_sized(family, n, TEST_LAYERS)
}

pub fn make_test_mesh_sized(family: Family, n: usize, layers: usize) -> Result<PolyMesh> {
    if !(3..=8).contains(&n) {
        return Err(Error::UnsupportedValence(n));
    }
    Ok(fan_mesh(family, n, layers.max(1)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelError {
    pub level: usize,
    pub h: f64,
    pub e2: f64,
    pub einf: f64,
    /// Orders against the previous level; `None` on the first.
    pub order2: Option<f64>,
    pub order_inf: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub scheme: &'static str,
    pub valence: usize,
    pub depth: usize,
    pub levels: Vec<LevelError>,
    /// Least-squares slopes of `-log2(error)` against level.
    pub fitted_order2: f64,
    pub fitted_order_inf: f64,
}

pub fn order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

/// Least-squares slope of `-log2(e)` against `x`.
pub fn fitted_order(x: &[f64], e: &[f64]) -> f64 {
    let n = x.len() as f64;
    let y: Vec<f64> = e.iter().map(|v| -v.log2()).collect();
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let opt = |o: Option<f64>| o.map(|v| format!("{v:.16e}")).unwrap_or_default();
        let mut s = String::from("level,h,E2,Einf,order2,orderInf\n");
        for l in &self.levels {
            s += &format!(
                "{},{:.16e},{:.16e},{:.16e},{},{}\n",
                l.level,
                l.h,
                l.e2,
                l.einf,
                opt(l.order2),
                opt(l.order_inf)
            );
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Errors of the quasi-interpolant of `f` on `base` refined `level` times,
/// for each requested level, all sampled on the same point set: the limit
/// surface of `base` refined `max(levels) + k` times over its active region.
pub fn convergence_on(
    base: &HalfEdgeMesh,
    scheme: &SchemeId,
    valence: usize,
    levels: &[usize],
    k: usize,
    f: impl Fn(&Point3) -> f64,
) -> Result<ConvergenceReport> {
    if levels.is_empty() {
        return Err(Error::InvalidConfig("no levels requested".into()));
    }
    let top = *levels.iter().max().unwrap();
    let hier = Hierarchy::new(base.clone(), scheme, top + k)?;
    let exact: Vec<f64> = hier.points.iter().map(&f).collect();
    let h0 = base_spacing(base);
    let mut rows: Vec<LevelError> = Vec::new();
    for &level in levels {
        let engine = Engine::new(hier.levels[level].clone(), scheme.clone())?;
        let qi = build_with(&engine)?;
        let c = qi.apply(&f)?;
        let approx = hier.sample(level, &c)?;
        let (e2, einf) = relative_errors(&approx, &exact, &hier.weights)?;
        let prev = rows.last();
        rows.push(LevelError {
            level,
            h: h0 / f64::powi(2.0, level as i32),
            e2,
            einf,
            order2: prev.map(|p| order(p.e2, e2)),
            order_inf: prev.map(|p| order(p.einf, einf)),
        });
    }
    let x: Vec<f64> = rows.iter().map(|r| r.level as f64).collect();
    let fit = |e: Vec<f64>| if rows.len() > 1 { fitted_order(&x, &e) } else { f64::NAN };
    Ok(ConvergenceReport {
        scheme: scheme.name(),
        valence,
        depth: k,
        fitted_order2: fit(rows.iter().map(|r| r.e2).collect()),
        fitted_order_inf: fit(rows.iter().map(|r| r.einf).collect()),
        levels: rows,
    })
}

/// Convergence of the quasi-interpolant of [`test_function`] on the
/// default test mesh with an extraordinary vertex of valence `valence`.
pub fn convergence_study(scheme: &SchemeId, valence: usize, levels: &[usize], k: usize) -> Result<ConvergenceReport> {
    let base = HalfEdgeMesh::new(&make_test_mesh(scheme.family(), valence)?)?;
    convergence_on(&base, scheme, valence, levels, k, test_function)
}

/// Mean edge length.
fn base_spacing(mesh: &HalfEdgeMesh) -> f64 {
    let total: f64 = (0..mesh.num_edges())
        .map(|e| {
            let (a, b) = mesh.edge_endpoints(e);
            (mesh.position(a) - mesh.position(b)).norm()
        })
        .sum();
    total / mesh.num_edges() as f64
}
