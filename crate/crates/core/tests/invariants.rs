use std::sync::Arc;

use proptest::prelude::*;

use subdqi::analysis::{make_test_mesh, relative_errors};
use subdqi::mesh::generate::{fan_mesh, Family};
use subdqi::mesh::{load_obj, ordered_ring, write_obj, HalfEdgeMesh};
use subdqi::projector::{build, build_with, weights_for, Engine};
use subdqi::schemes::{limit_values, refine_values, MLoopMasks, SchemeId};

fn scheme_strategy() -> impl Strategy<Value = SchemeId> {
    prop_oneof![
        Just(SchemeId::CatmullClark),
        Just(SchemeId::Loop),
        Just(SchemeId::ModifiedLoop(Arc::new(MLoopMasks::loop_equivalent(3..=12)))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    // Affine data has affine limit functions, and an exact projector must
    // then return the data at the control points.
    #[test]
    fn affine_functions_are_reproduced(
        scheme in scheme_strategy(),
        n in 3usize..=8,
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
        c in -2.0f64..2.0,
    ) {
        let mesh = HalfEdgeMesh::new(&make_test_mesh(scheme.family(), n).unwrap()).unwrap();
        let qi = build(&mesh, &scheme).unwrap();
        let f = |p: &subdqi::Point3| a + b * p.x + c * p.y;
        let coeffs = qi.apply(f).unwrap();
        for func in &qi.functionals {
            let v = func.owner;
            prop_assert!((coeffs[v] - f(&mesh.position(v))).abs() < 1e-12);
        }
    }

    #[test]
    fn random_nets_are_recovered(scheme in scheme_strategy(), n in 3usize..=8, seed in any::<u64>()) {
        let mesh = HalfEdgeMesh::new(&fan_mesh(scheme.family(), n, 4)).unwrap();
        let engine = Engine::new(mesh, scheme.clone()).unwrap();
        let qi = build_with(&engine).unwrap();
        let mut state = seed;
        let net: Vec<f64> = (0..engine.coarse.num_vertices())
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        let fine = refine_values(&engine.coarse, &scheme, &net).unwrap();
        let back = qi.apply_values(&limit_values(&engine.fine, &scheme, &fine).unwrap());
        for f in &qi.functionals {
            prop_assert!((back[f.owner] - net[f.owner]).abs() < 1e-9);
        }
    }

    #[test]
    fn closed_forms_sum_to_one(scheme in scheme_strategy(), n in 3usize..=12) {
        let profile = weights_for(&scheme, n).unwrap();
        prop_assert!((profile.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ring_slot_counts(quad in any::<bool>(), n in 3usize..=12) {
        let family = if quad { Family::Quad } else { Family::Tri };
        let mesh = HalfEdgeMesh::new(&fan_mesh(family, n, 3)).unwrap();
        let per = if quad { 6 } else { 3 };
        prop_assert_eq!(ordered_ring(&mesh, 0, 1).unwrap().interp.len(), per * n + 1);
        prop_assert_eq!(ordered_ring(&mesh, 0, 2).unwrap().controls.len(), per * n + 1);
    }

    #[test]
    fn obj_round_trip(quad in any::<bool>(), n in 3usize..=8) {
        let family = if quad { Family::Quad } else { Family::Tri };
        let mesh = fan_mesh(family, n, 2);
        let back = load_obj(&write_obj(&mesh)).unwrap();
        prop_assert_eq!(back, mesh);
    }

    #[test]
    fn relative_errors_are_scale_invariant(
        values in prop::collection::vec(0.1f64..1.0, 4..20),
        noise in -0.1f64..0.1,
        scale in 0.01f64..100.0,
    ) {
        let approx: Vec<f64> = values.iter().map(|v| v + noise).collect();
        let w = vec![1.0; values.len()];
        let (e2, ei) = relative_errors(&approx, &values, &w).unwrap();
        let s = |x: &[f64]| x.iter().map(|v| v * scale).collect::<Vec<_>>();
        let (f2, fi) = relative_errors(&s(&approx), &s(&values), &w).unwrap();
        prop_assert!((e2 - f2).abs() <= 1e-12 * e2.max(1.0));
        prop_assert!((ei - fi).abs() <= 1e-12 * ei.max(1.0));
    }
}
