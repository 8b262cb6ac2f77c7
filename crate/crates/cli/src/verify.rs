//! Consistency suites run by `subdqi verify`.

use std::ops::RangeInclusive;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subdqi::analysis::make_test_mesh;
use subdqi::mesh::{ordered_ring, HalfEdgeMesh};
use subdqi::numeric::inverse_row;
use subdqi::projector::{build_with, weights_for, Engine};
use subdqi::schemes::{limit_values, local_a, oracle_a, refine_values, LocalRule, SchemeId};

use crate::Failure;

struct Check {
    name: String,
    value: f64,
    tol: f64,
}

fn max_abs(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |m, x| m.max(x.abs()))
}

fn checks_for(scheme: &SchemeId, n: usize) -> Result<Vec<Check>, Failure> {
    let mut out = Vec::new();
    let label = |what: &str| format!("{} n={n} {what}", scheme.name());

    let rule = LocalRule::<f64>::for_scheme(scheme, n)?;
    let a = local_a(&rule, n);
    let oracle = oracle_a(scheme, n)?;
    out.push(Check {
        name: label("assembly A = L S vs refinement oracle"),
        value: max_abs(a.iter().zip(oracle.iter()).map(|(x, y)| x - y)),
        tol: 1e-12,
    });
    out.push(Check {
        name: label("row sums of A"),
        value: max_abs(a.row_iter().map(|r| r.sum() - 1.0)),
        tol: 1e-12,
    });

    let profile = weights_for(scheme, n)?;
    let fan = HalfEdgeMesh::new(&subdqi::mesh::generate::fan_mesh(scheme.family(), n, 4))?;
    let ring = ordered_ring(&fan, 0, 1)?;
    let numeric = inverse_row(&a, 0).ok_or_else(|| Failure::Numerical(label("local system is singular")))?;
    out.push(Check {
        name: label("closed form vs numeric inverse row"),
        value: max_abs(profile.expand(&ring).iter().zip(&numeric).map(|(x, y)| x - y)),
        tol: 1e-10,
    });

    if (3..=8).contains(&n) {
        let mesh = HalfEdgeMesh::new(&make_test_mesh(scheme.family(), n)?)?;
        let engine = Engine::new(mesh, scheme.clone())?;
        let qi = build_with(&engine)?;
        out.push(Check {
            name: label("functional weight sums"),
            value: max_abs(qi.functionals.iter().map(|f| f.weight_sum() - 1.0)),
            tol: 1e-12,
        });
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let c: Vec<f64> = (0..engine.coarse.num_vertices()).map(|_| rng.random_range(-1.0..1.0)).collect();
            let fine = refine_values(&engine.coarse, scheme, &c)?;
            let lim = limit_values(&engine.fine, scheme, &fine)?;
            let back = qi.apply_values(&lim);
            worst = worst.max(max_abs(qi.functionals.iter().map(|f| back[f.owner] - c[f.owner])));
        }
        out.push(Check { name: label("projector property on the test mesh"), value: worst, tol: 1e-9 });
    }
    Ok(out)
}

pub fn run(schemes: &[SchemeId], valences: RangeInclusive<usize>) -> Result<(), Failure> {
    let mut first_failure: Option<String> = None;
    let mut count = 0;
    for scheme in schemes {
        for n in valences.clone() {
            for c in checks_for(scheme, n)? {
                let ok = c.value <= c.tol;
                count += 1;
                println!("{:<64} {:.3e} (tol {:.0e}) {}", c.name, c.value, c.tol, if ok { "ok" } else { "FAIL" });
                if !ok && first_failure.is_none() {
                    first_failure = Some(c.name);
                }
            }
        }
    }
    match first_failure {
        Some(name) => Err(Failure::Numerical(name)),
        None => {
            println!("all {count} checks passed");
            Ok(())
        }
    }
}
