use eigenform_core::geometry::{
    anti_attracting_probe, boundary_projection, ext_contains, project_to_boundary, SimplexPoint,
};
use eigenform_core::renorm::normalized_lambda;
use eigenform_core::triples::builtin;
use eigenform_core::{DirichletForm, Tolerances, Weights};
use proptest::prelude::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

/// A point of the slice `Z` (coordinates sum to one, possibly negative).
fn arb_slice_point(len: usize) -> impl Strategy<Value = SimplexPoint> {
    prop::collection::vec(-1.0f64..2.0, len).prop_filter_map("degenerate sum", move |raw| {
        let shift = (1.0 - raw.iter().sum::<f64>()) / len as f64;
        let mut c: Vec<f64> = raw.iter().map(|x| x + shift).collect();
        let rest: f64 = c[1..].iter().sum();
        c[0] = 1.0 - rest;
        SimplexPoint::new(c).ok()
    })
}

fn arb_reference(len: usize) -> impl Strategy<Value = SimplexPoint> {
    prop::collection::vec(0.05f64..1.0, len).prop_map(|raw| {
        let s: f64 = raw.iter().sum();
        let mut c: Vec<f64> = raw.iter().map(|x| x / s).collect();
        let rest: f64 = c[1..].iter().sum();
        c[0] = 1.0 - rest;
        SimplexPoint::new(c).unwrap()
    })
}

fn sup(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn projection_properties(
        (reference, x) in (3usize..8).prop_flat_map(|len| (arb_reference(len), arb_slice_point(len)))
    ) {
        prop_assume!(x.sup_distance(&reference) > 1e-6);

        let p = boundary_projection(&reference, &x, &tol()).unwrap();
        let pc = p.point.coords();
        prop_assert!(pc.iter().all(|&c| c >= -1e-12));
        prop_assert!(pc.contains(&0.0));
        prop_assert!((pc.iter().sum::<f64>() - 1.0).abs() <= 1e-12);

        // Idempotence.
        let again = project_to_boundary(&reference, &p.point, &tol()).unwrap();
        prop_assert!(sup(again.coords(), pc) <= 1e-10);

        // x = p + s (E_ref - p) with s in [0, 1] inside D_N, and p in [x, E_ref]
        // outside it; both amount to t* >= 1 or t* <= 1 along the ray.
        let s = 1.0 - 1.0 / p.t;
        let rebuilt: Vec<f64> = pc.iter().zip(reference.coords()).map(|(pp, r)| pp + s * (r - pp)).collect();
        prop_assert!(sup(&rebuilt, x.coords()) <= 1e-9 * p.t.max(1.0));
        if x.in_simplex() {
            prop_assert!(p.t >= 1.0 - 1e-12);
        } else {
            prop_assert!(p.t <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn boundary_points_are_fixed(reference in arb_reference(6), raw in prop::collection::vec(0.0f64..1.0, 6), zero in 0usize..6) {
        let mut c = raw.clone();
        c[zero] = 0.0;
        let s: f64 = c.iter().sum();
        prop_assume!(s > 1e-3);
        let mut c: Vec<f64> = c.iter().map(|x| x / s).collect();
        let other = (zero + 1) % 6;
        let rest: f64 = c.iter().enumerate().filter(|&(i, _)| i != other).map(|(_, x)| x).sum();
        c[other] = 1.0 - rest;
        let x = SimplexPoint::new(c).unwrap();
        let p = project_to_boundary(&reference, &x, &tol()).unwrap();
        prop_assert!(sup(p.coords(), x.coords()) <= 1e-12);
    }

    #[test]
    fn ext_mutual_exclusion(reference in arb_reference(4), x in arb_slice_point(4), y in arb_slice_point(4), collinear in any::<bool>(), t in 0.1f64..5.0) {
        prop_assume!(x.sup_distance(&reference) > 1e-6);
        let y = if collinear {
            let c: Vec<f64> = reference.coords().iter().zip(x.coords()).map(|(r, xx)| r + t * (xx - r)).collect();
            SimplexPoint::new(c).unwrap()
        } else {
            y
        };
        prop_assume!(y.sup_distance(&reference) > 1e-6 && y.sup_distance(&x) > 1e-9);
        let forward = ext_contains(&reference, &x, &y, &tol()).unwrap();
        let backward = ext_contains(&reference, &y, &x, &tol()).unwrap();
        prop_assert!(!(forward.inside && backward.inside));
        if collinear {
            prop_assert!((forward.t - t).abs() <= 1e-9 * t);
            prop_assert_eq!(forward.inside, t > 1.0 + 1e-9);
        }
    }
}

#[test]
fn gasket_probe_near_repulsing_eigenform() {
    let g = builtin("gasket").unwrap();
    let e_b = SimplexPoint::new(vec![1.0, 0.0, 0.0]).unwrap();
    let e_ref = SimplexPoint::new(vec![1.0 / 3.0; 3]).unwrap();
    let report = anti_attracting_probe(
        &g,
        &Weights::uniform(3),
        &e_b,
        &e_ref,
        1e-2,
        200,
        42,
        &tol(),
    )
    .unwrap();
    assert_eq!(report.hits, 0);
    assert_eq!(report.degenerate_images, 0);
    assert!(report.worst_t.unwrap() < 1.0);
}

#[test]
fn gasket_probe_near_d2_point() {
    let g = builtin("gasket").unwrap();
    // (1/2, 1/2, 0) is irreducible and not fixed.
    let form = DirichletForm::new(3, vec![0.5, 0.5, 0.0]).unwrap();
    let (_, image) = normalized_lambda(&g, &Weights::uniform(3), &form, &tol()).unwrap();
    let moved = image
        .coeffs()
        .iter()
        .zip(form.coeffs())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(moved > 1e-3, "{:?}", image.coeffs());
    let e_b = SimplexPoint::from_form(&form).unwrap();
    let e_ref = SimplexPoint::new(vec![1.0 / 3.0; 3]).unwrap();
    let report =
        anti_attracting_probe(&g, &Weights::uniform(3), &e_b, &e_ref, 1e-2, 200, 3, &tol())
            .unwrap();
    assert_eq!(report.hits, 0);
}

#[test]
fn probe_is_deterministic() {
    let s = builtin("snowflake").unwrap();
    let n = s.pair_index().len();
    let mut c = vec![1.0 / (n - 1) as f64; n];
    c[0] = 0.0;
    let rest: f64 = c[2..].iter().sum();
    c[1] = 1.0 - rest;
    let e_b = SimplexPoint::new(c).unwrap();
    let e_ref = SimplexPoint::new(vec![1.0 / n as f64; n]).unwrap();
    let a =
        anti_attracting_probe(&s, &Weights::uniform(7), &e_b, &e_ref, 0.05, 64, 9, &tol()).unwrap();
    let b =
        anti_attracting_probe(&s, &Weights::uniform(7), &e_b, &e_ref, 0.05, 64, 9, &tol()).unwrap();
    assert_eq!(a, b);
}
