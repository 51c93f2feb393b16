mod common;

use eigenform_core::forms::rayleigh_bounds;
use eigenform_core::renorm::lambda_r;
use eigenform_core::solver::{
    existence_report, solve_eigenform, verify_eigenform, Conclusion, SolveStatus, SolverConfig,
    Start, Verdict,
};
use eigenform_core::triples::builtin;
use eigenform_core::{DirichletForm, Tolerances, Weights};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn converged(
    name: &str,
    w: &[f64],
) -> (
    eigenform_core::FractalTriple,
    Weights,
    eigenform_core::solver::EigenformResult,
) {
    let t = builtin(name).unwrap();
    let r = Weights::new(w.to_vec()).unwrap();
    let res = solve_eigenform(&t, &r, &SolverConfig::default()).unwrap();
    assert!(res.converged(), "{name} {w:?}: {:?}", res.status);
    (t, r, res)
}

#[test]
fn converged_results_verify() {
    for (name, w) in [
        ("gasket", vec![1.0, 1.5, 1.0]),
        ("snowflake", vec![1.0; 7]),
        ("tripod", vec![1.0, 2.0, 3.0]),
        ("vicsek", vec![1.0; 5]),
    ] {
        let (t, r, res) = converged(name, &w);
        let v = verify_eigenform(&t, &r, &res.form, None, 1e-10, &Tolerances::default()).unwrap();
        assert_eq!(v.verdict, Verdict::Eigenform, "{name}");
        assert!(v.rho > 0.0);
        assert!((v.rho - res.rho).abs() <= 1e-12);
    }
}

#[test]
fn sup_and_inf_ratio_agree_at_fixed_points() {
    for (name, w) in [("snowflake", vec![1.0; 7]), ("tripod", vec![1.0, 2.0, 3.0])] {
        let (t, r, res) = converged(name, &w);
        let image = lambda_r(&t, &r, &res.form, &Tolerances::default()).unwrap();
        let n = t.n_boundary();
        let b = rayleigh_bounds(
            &image.laplacian(),
            &res.form.laplacian(),
            &DMatrix::identity(n, n),
        )
        .unwrap();
        assert!(
            (b.max - res.rho).abs() <= 1e-9 && (b.min - res.rho).abs() <= 1e-9,
            "{name}: {b:?}"
        );
    }
}

#[test]
fn snowflake_and_tripod_values() {
    let (_, _, s) = converged("snowflake", &[1.0; 7]);
    assert!((s.rho - 0.54305).abs() < 1e-5);
    let (_, _, t) = converged("tripod", &[1.0, 2.0, 3.0]);
    assert!((t.rho - 0.80306).abs() < 1e-5);
}

#[test]
fn degenerating_trajectory_is_diagnosed() {
    let t = builtin("gasket").unwrap();
    let r = Weights::new(vec![0.5, 1.0, 1.0]).unwrap();
    let rep = existence_report(&t, &r, &SolverConfig::default()).unwrap();
    assert_eq!(rep.solve.status, SolveStatus::Degenerating);
    assert_eq!(rep.conclusion, Conclusion::NonRepulsingLimit);
    let limit = rep.limit.unwrap();
    assert_eq!(limit.candidate.coeffs(), &[0.0, 0.0, 1.0]);
    let rep = limit.repulsing.unwrap();
    assert!((rep.rho - 0.5).abs() < 1e-12);
    assert!(rep.mu < rep.rho);
}

#[test]
fn trajectory_is_capped() {
    let t = builtin("tripod").unwrap();
    let r = Weights::new(vec![1.0, 2.0, 3.0]).unwrap();
    let cfg = SolverConfig {
        max_iter: 1500,
        tol: 1e-300,
        residual_tol: 1e-300,
        ..Default::default()
    };
    let res = solve_eigenform(&t, &r, &cfg).unwrap();
    assert_eq!(res.status, SolveStatus::MaxIter);
    assert_eq!(res.iterations, 1500);
    assert_eq!(res.trajectory.len(), 1000);
    assert_eq!(res.trajectory.last().unwrap().iteration, 1500);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn start_scale_does_not_matter(c in 0.01f64..100.0, raw in prop::collection::vec(0.1f64..1.0, 15)) {
        let t = builtin("snowflake").unwrap();
        let r = Weights::uniform(7);
        let start = DirichletForm::new(6, raw).unwrap();
        let a = solve_eigenform(&t, &r, &SolverConfig { start: Start::Form(start.clone()), ..Default::default() }).unwrap();
        let b = solve_eigenform(&t, &r, &SolverConfig { start: Start::Form(start.scaled(c).unwrap()), ..Default::default() }).unwrap();
        prop_assert!(a.converged() && b.converged());
        for (x, y) in a.form.coeffs().iter().zip(b.form.coeffs()) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn damped_matches_undamped(theta in 0.2f64..1.0, w in prop::collection::vec(0.5f64..2.0, 3)) {
        let t = builtin("tripod").unwrap();
        let r = Weights::new(w).unwrap();
        let plain = solve_eigenform(&t, &r, &SolverConfig::default()).unwrap();
        let damped = solve_eigenform(&t, &r, &SolverConfig { damping: theta, ..Default::default() }).unwrap();
        if plain.converged() && damped.converged() {
            for (x, y) in plain.form.coeffs().iter().zip(damped.form.coeffs()) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
        }
    }
}
