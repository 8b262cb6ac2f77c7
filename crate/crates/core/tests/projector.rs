use std::sync::Arc;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use subdqi::mesh::generate::{fan_mesh, grid_mesh};
use subdqi::mesh::{ordered_ring, HalfEdgeMesh, VertexTag};
use subdqi::numeric::inverse_row;
use subdqi::projector::{build_with, tables, weights_for, Engine, Provenance};
use subdqi::schemes::{limit_values, oracle_a, refine_values, MLoopMasks, SchemeId};

fn perturbed() -> SchemeId {
    let mut m = MLoopMasks::loop_equivalent(3..=12);
    for (&n, mask) in m.valences.iter_mut() {
        let gamma = 0.41;
        let raw: Vec<f64> = (0..n).map(|j| 0.25 + 0.5 * (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos()).collect();
        let s: f64 = raw.iter().sum();
        mask.gamma = gamma;
        mask.gamma_j = raw.iter().map(|r| r * (1.0 - gamma) / s).collect();
        mask.beta *= 0.97;
        mask.alpha = 1.0 - n as f64 * mask.beta;
    }
    SchemeId::ModifiedLoop(Arc::new(m))
}

fn all_schemes() -> Vec<SchemeId> {
    vec![
        SchemeId::CatmullClark,
        SchemeId::Loop,
        SchemeId::ModifiedLoop(Arc::new(MLoopMasks::loop_equivalent(3..=12))),
        perturbed(),
    ]
}

#[test]
fn closed_forms_solve_the_local_system() {
    for scheme in all_schemes() {
        for n in 3..=12 {
            let profile = weights_for(&scheme, n).unwrap();
            let mesh = HalfEdgeMesh::new(&fan_mesh(scheme.family(), n, 4)).unwrap();
            let ring = ordered_ring(&mesh, 0, 1).unwrap();
            let closed = profile.expand(&ring);
            let a = oracle_a(&scheme, n).unwrap();
            let numeric = inverse_row(&a, 0).unwrap();
            for (k, (x, y)) in closed.iter().zip(&numeric).enumerate() {
                assert!((x - y).abs() < 1e-10, "{} n={n} slot {k}: {x} vs {y}", scheme.name());
            }
        }
    }
}

#[test]
fn regular_box_spline_matrix_matches_table() {
    // Assemble on a regular fan and map labels by lattice position.
    let scheme = SchemeId::Loop;
    let mesh = HalfEdgeMesh::new(&fan_mesh(scheme.family(), 6, 4)).unwrap();
    let engine = Engine::new(mesh.clone(), scheme).unwrap();
    let h = 3f64.sqrt() / 2.0;
    let lattice = |p: &subdqi::Point3, scale: f64| ((p.y / (h * scale)).round() as i64, (2.0 * p.x / scale).round() as i64);
    let find = |keys: Vec<(i64, i64)>, key: (i64, i64)| keys.iter().position(|&q| q == key).expect("label present");
    let host = engine.host(0).unwrap();
    let (cols, a) = engine.assemble(&host.rows).unwrap();
    let table = tables::regular_loop::<f64>();
    for i in 0..19 {
        let row_key = tables::hex_label_position(i);
        let ri = find(host.rows.iter().map(|&x| lattice(&engine.fine.position(x), 0.125)).collect(), row_key);
        for j in 0..19 {
            let col_key = tables::hex_label_position(j);
            let cj = find(cols.iter().map(|&c| lattice(&mesh.position(c), 0.25)).collect(), col_key);
            assert!((a[(ri, cj)] - table[(i, j)]).abs() < 1e-15, "label ({}, {})", i + 1, j + 1);
        }
    }
}

fn check_projector(scheme: &SchemeId, mesh: HalfEdgeMesh, seed: u64, nets: usize) {
    let engine = Engine::new(mesh, scheme.clone()).unwrap();
    let qi = build_with(&engine).unwrap();
    let coarse = &engine.coarse;
    let fine_topo = &engine.fine;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for f in &qi.functionals {
        assert!((f.weight_sum() - 1.0).abs() < 1e-12, "{} vertex {} sum {}", scheme.name(), f.owner, f.weight_sum());
    }
    for _ in 0..nets {
        let c: Vec<f64> = (0..coarse.num_vertices()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let fine = refine_values(coarse, scheme, &c).unwrap();
        let lim = limit_values(fine_topo, scheme, &fine).unwrap();
        let back = qi.apply_values(&lim);
        for f in &qi.functionals {
            let v = f.owner;
            assert!((back[v] - c[v]).abs() < 1e-9, "{} vertex {v} ({:?}): {} vs {}", scheme.name(), f.provenance, back[v], c[v]);
        }
    }
}

#[test]
fn projector_property_on_fans() {
    for scheme in all_schemes() {
        for n in 3..=8 {
            let mesh = HalfEdgeMesh::new(&fan_mesh(scheme.family(), n, 5)).unwrap();
            check_projector(&scheme, mesh, n as u64, 5);
        }
    }
}

#[test]
fn regular_grid_dispatch() {
    let mesh = HalfEdgeMesh::new(&grid_mesh(8, 8)).unwrap();
    let engine = Engine::new(mesh.clone(), SchemeId::CatmullClark).unwrap();
    let qi = build_with(&engine).unwrap();
    for f in &qi.functionals {
        match engine.class.tag(f.owner) {
            VertexTag::RegularInterior => {
                assert_eq!(f.provenance, Provenance::ClosedFormRegular);
                assert_eq!(f.samples.len(), 25);
            }
            _ => assert!(matches!(f.provenance, Provenance::TargetPoint(_) | Provenance::CornerSystem)),
        }
    }
    check_projector(&SchemeId::CatmullClark, mesh, 7, 5);
}

#[test]
fn one_closed_form_ep_per_fan() {
    for scheme in all_schemes() {
        let mesh = HalfEdgeMesh::new(&fan_mesh(scheme.family(), 5, 5)).unwrap();
        let engine = Engine::new(mesh, scheme.clone()).unwrap();
        let qi = build_with(&engine).unwrap();
        let eps = qi.functionals.iter().filter(|f| f.provenance == Provenance::ClosedFormEp).count();
        assert_eq!(eps, 1, "{}", scheme.name());
    }
}
