//! Eigenform search by normalized fixed-point iteration, eigenform
//! verification and the repulsing check for degenerate eigenforms.

use std::collections::VecDeque;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::{rayleigh_bounds, DirichletForm};
use crate::renorm::{classify, constrained_form, lambda_r, BoundaryClass, Stratum, Weights};
use crate::tolerance::Tolerances;
use crate::triples::FractalTriple;

/// Number of trailing iterations kept in [`EigenformResult::trajectory`].
pub const TRAJECTORY_CAP: usize = 1000;

/// Consecutive iterations below the degeneracy floor before giving up.
pub const DEGENERATING_RUN: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Start {
    Uniform,
    Form(DirichletForm),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverConfig {
    /// Sup-norm change between iterates that counts as stationary.
    pub tol: f64,
    /// Bound on `‖Λ_r(E) - ρE‖_∞ / |E|` for an eigenform.
    pub residual_tol: f64,
    /// Bound on `|Λ_r(E)_d / (ρ E_d) - 1|` over the coefficients that count
    /// as nonzero, checked before a stationary iterate is accepted.
    pub ratio_tol: f64,
    pub max_iter: usize,
    pub start: Start,
    pub degeneracy_floor: f64,
    /// Step `θ` in `E <- (1 - θ) E + θ Λ̃*_r(E)`.
    pub damping: f64,
    pub tolerances: Tolerances,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-13,
            residual_tol: 1e-10,
            ratio_tol: 1e-6,
            max_iter: 100_000,
            start: Start::Uniform,
            degeneracy_floor: 1e-13,
            damping: 1.0,
            tolerances: Tolerances::default(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("tol", self.tol),
            ("residual_tol", self.residual_tol),
            ("ratio_tol", self.ratio_tol),
            ("degeneracy_floor", self.degeneracy_floor),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "damping must lie in (0, 1], got {}",
                self.damping
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidArgument("max_iter must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    MaxIter,
    Degenerating,
    DegenerateImage,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub iteration: usize,
    /// `|Λ_r(E)|` for the normalized iterate `E`.
    pub scale: f64,
    pub min_coefficient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenformResult {
    pub status: SolveStatus,
    /// Last normalized iterate.
    pub form: DirichletForm,
    /// `|Λ_r(E)|` at the last iterate; zero when the image vanished.
    pub rho: f64,
    pub residual: f64,
    pub iterations: usize,
    pub min_coefficient: f64,
    /// Last [`TRAJECTORY_CAP`] iterations; never empty for a finished solve,
    /// so an empty vector marks a stripped summary.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trajectory: Vec<TrajectoryPoint>,
}

impl EigenformResult {
    pub fn converged(&self) -> bool {
        self.status == SolveStatus::Converged
    }
}

fn check_inputs(triple: &FractalTriple, r: &Weights, e: &DirichletForm) -> Result<()> {
    if r.len() != triple.n_cells() {
        return Err(Error::Dimension {
            what: "weights",
            expected: triple.n_cells(),
            found: r.len(),
        });
    }
    if e.n_boundary() != triple.n_boundary() {
        return Err(Error::Dimension {
            what: "form boundary",
            expected: triple.n_boundary(),
            found: e.n_boundary(),
        });
    }
    Ok(())
}

fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Largest `|image_d / (ρ e_d) - 1|` over the coefficients with `e_d > floor`.
fn max_ratio_deviation(e: &[f64], image: &[f64], rho: f64, floor: f64) -> f64 {
    e.iter()
        .zip(image)
        .filter(|(c, _)| **c > floor)
        .map(|(c, l)| (l / (rho * c) - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Iterates the normalized operator from the configured start point.
///
/// An iterate is accepted once the step is below `tol` and it passes the
/// eigenform test (residual, per-coefficient ratios, irreducibility).
/// Stationary-looking iterates that fail the test keep iterating, so a slow
/// drift towards the boundary ends as `Degenerating` rather than as a false
/// convergence.
pub fn solve_eigenform(
    triple: &FractalTriple,
    r: &Weights,
    config: &SolverConfig,
) -> Result<EigenformResult> {
    config.validate()?;
    let tol = &config.tolerances;
    let n = triple.n_boundary();
    let mut e = match &config.start {
        Start::Uniform => DirichletForm::uniform(n),
        Start::Form(f) => {
            check_inputs(triple, r, f)?;
            f.normalized(0.0)?.1
        }
    };
    check_inputs(triple, r, &e)?;

    let mut trajectory = VecDeque::with_capacity(TRAJECTORY_CAP);
    let mut below_floor = 0;
    let mut iterations = 0;
    loop {
        iterations += 1;
        let image = lambda_r(triple, r, &e, tol)?;
        let scale = image.norm();
        if trajectory.len() == TRAJECTORY_CAP {
            trajectory.pop_front();
        }
        trajectory.push_back(TrajectoryPoint {
            iteration: iterations,
            scale,
            min_coefficient: e.min_coefficient(),
        });
        let finish = |status, residual, trajectory: VecDeque<TrajectoryPoint>| EigenformResult {
            status,
            min_coefficient: e.min_coefficient(),
            form: e.clone(),
            rho: scale,
            residual,
            iterations,
            trajectory: trajectory.into(),
        };
        if !(scale > tol.image_zero_tol) {
            return Ok(finish(
                SolveStatus::DegenerateImage,
                image.max_coefficient(),
                trajectory,
            ));
        }
        let residual = residual(&e, &image, scale);
        let next = step(&e, &image, config.damping)?;
        let change = sup_distance(next.coeffs(), e.coeffs());
        if change <= config.tol
            && residual <= config.residual_tol
            && max_ratio_deviation(e.coeffs(), image.coeffs(), scale, tol.zero_tol)
                <= config.ratio_tol
            && e.is_irreducible(tol.zero_tol)
        {
            return Ok(finish(SolveStatus::Converged, residual, trajectory));
        }
        if e.min_coefficient() < config.degeneracy_floor {
            below_floor += 1;
            if below_floor >= DEGENERATING_RUN {
                return Ok(finish(SolveStatus::Degenerating, residual, trajectory));
            }
        } else {
            below_floor = 0;
        }
        if iterations == config.max_iter {
            return Ok(finish(SolveStatus::MaxIter, residual, trajectory));
        }
        e = next;
    }
}

fn residual(e: &DirichletForm, image: &DirichletForm, rho: f64) -> f64 {
    e.coeffs()
        .iter()
        .zip(image.coeffs())
        .map(|(c, l)| (l - rho * c).abs())
        .fold(0.0, f64::max)
}

fn step(e: &DirichletForm, image: &DirichletForm, damping: f64) -> Result<DirichletForm> {
    let next = image.normalized(0.0)?.1;
    if damping == 1.0 {
        return Ok(next);
    }
    let mixed = e
        .coeffs()
        .iter()
        .zip(next.coeffs())
        .map(|(a, b)| (1.0 - damping) * a + damping * b)
        .collect();
    Ok(DirichletForm::new(e.n_boundary(), mixed)?
        .normalized(0.0)?
        .1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Residual small, positive eigenvalue and `E` irreducible.
    Eigenform,
    /// Residual small, positive eigenvalue and `E` reducible.
    DegenerateEigenform,
    NotEigenform,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub rho: f64,
    pub residual: f64,
    /// `Λ_r(E)_d / E_d` for the coefficients with `E_d > zero_tol * |E|`.
    pub ratios: Vec<Option<f64>>,
    pub verdict: Verdict,
}

/// Tests `Λ_r(E) = ρE`, with `ρ = |Λ_r(E)| / |E|` unless given. The residual
/// is `‖Λ_r(E) - ρE‖_∞` and is compared against `residual_tol * |E|`.
pub fn verify_eigenform(
    triple: &FractalTriple,
    r: &Weights,
    e: &DirichletForm,
    rho: Option<f64>,
    residual_tol: f64,
    tol: &Tolerances,
) -> Result<Verification> {
    check_inputs(triple, r, e)?;
    let norm = e.norm();
    if !(norm > 0.0) {
        return Err(Error::ZeroForm { norm });
    }
    let image = lambda_r(triple, r, e, tol)?;
    let rho = rho.unwrap_or(image.norm() / norm);
    let residual = residual(e, &image, rho);
    let ratios = e
        .coeffs()
        .iter()
        .zip(image.coeffs())
        .map(|(&c, &l)| (c > tol.zero_tol * norm).then(|| l / c))
        .collect();
    let verdict = if residual <= residual_tol * norm && rho > tol.image_zero_tol {
        if e.is_irreducible(tol.zero_tol) {
            Verdict::Eigenform
        } else {
            Verdict::DegenerateEigenform
        }
    } else {
        Verdict::NotEigenform
    };
    Ok(Verification {
        rho,
        residual,
        ratios,
        verdict,
    })
}

fn serialize_extended<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_infinite() {
        s.serialize_str(if *v > 0.0 { "+inf" } else { "-inf" })
    } else {
        s.serialize_f64(*v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepulsingReport {
    pub rho: f64,
    /// Minimum of `Λ_{r,Ē}(Ẽ)(u) / Ẽ(u)` over the non-constant feasible kernel
    /// directions; `+inf` when there are none.
    #[serde(serialize_with = "serialize_extended")]
    pub mu: f64,
    pub infeasible_directions: usize,
    pub repulsing_nonstrict: bool,
    pub repulsing_strict: bool,
}

/// Checks whether the degenerate eigenform `e_deg` is repulsing relative to
/// the interior reference `e_ref`.
#[allow(clippy::too_many_arguments)]
pub fn repulsing_check(
    triple: &FractalTriple,
    r: &Weights,
    e_deg: &DirichletForm,
    e_ref: &DirichletForm,
    check_tol: f64,
    residual_tol: f64,
    tol: &Tolerances,
) -> Result<RepulsingReport> {
    check_inputs(triple, r, e_deg)?;
    check_inputs(triple, r, e_ref)?;
    if e_ref.min_coefficient() <= tol.zero_tol * e_ref.norm() {
        return Err(Error::InvalidArgument(
            "reference form must have all coefficients positive".into(),
        ));
    }
    let (_, e_deg) = e_deg.normalized(0.0)?;
    if e_deg.is_irreducible(tol.zero_tol) {
        return Err(Error::NotDegenerateEigenform("form is irreducible".into()));
    }
    let class = classify(triple, r, &e_deg, tol)?;
    if class.stratum != Stratum::D3 {
        return Err(Error::NotD3(class.stratum));
    }
    let check = verify_eigenform(triple, r, &e_deg, None, residual_tol, tol)?;
    if check.verdict != Verdict::DegenerateEigenform {
        return Err(Error::NotDegenerateEigenform(format!(
            "residual {:e} at rho {}",
            check.residual, check.rho
        )));
    }

    let kernel = e_deg.kernel_basis(tol.zero_tol);
    let constrained = constrained_form(triple, r, e_ref, &kernel, tol)?;
    let mu = match rayleigh_bounds(
        constrained.boundary_form(),
        &e_ref.laplacian(),
        constrained.feasible_basis(),
    ) {
        Ok(b) => b.min,
        Err(Error::EmptySubspace) => f64::INFINITY,
        Err(other) => return Err(other),
    };
    Ok(RepulsingReport {
        rho: check.rho,
        mu,
        infeasible_directions: constrained.infeasible_directions(),
        repulsing_nonstrict: mu >= check.rho - check_tol,
        repulsing_strict: mu >= check.rho + check_tol,
    })
}

/// Default `check_tol` for [`repulsing_check`].
pub const CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    EigenformFound,
    /// The trajectory approaches a degenerate eigenform in D3 that is not
    /// strictly repulsing, so repulsion cannot be used to push the iteration
    /// back into the interior.
    NonRepulsingLimit,
    /// The limit is a strictly repulsing degenerate eigenform.
    RepulsingLimit,
    /// The limit candidate is not a degenerate eigenform in D3.
    LimitNotDiagnosed,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitDiagnosis {
    /// Last iterate with coefficients below the degeneracy floor set to zero,
    /// renormalized.
    pub candidate: DirichletForm,
    pub verification: Verification,
    pub class: BoundaryClass,
    pub repulsing: Option<RepulsingReport>,
    /// Why the repulsing check did not run, if it did not.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExistenceReport {
    pub conclusion: Conclusion,
    pub solve: EigenformResult,
    pub limit: Option<LimitDiagnosis>,
}

/// Runs the solver and, on a degenerating trajectory, diagnoses the boundary
/// point it approaches. Only what the trajectory exposes is examined; other
/// degenerate eigenforms are not searched for.
pub fn existence_report(
    triple: &FractalTriple,
    r: &Weights,
    config: &SolverConfig,
) -> Result<ExistenceReport> {
    let solve = solve_eigenform(triple, r, config)?;
    let tol = &config.tolerances;
    match solve.status {
        SolveStatus::Converged => {
            return Ok(ExistenceReport {
                conclusion: Conclusion::EigenformFound,
                solve,
                limit: None,
            })
        }
        SolveStatus::Degenerating => {}
        SolveStatus::MaxIter | SolveStatus::DegenerateImage => {
            return Ok(ExistenceReport {
                conclusion: Conclusion::Inconclusive,
                solve,
                limit: None,
            })
        }
    }
    let floor = config.degeneracy_floor;
    let truncated = solve
        .form
        .coeffs()
        .iter()
        .map(|&c| if c < floor { 0.0 } else { c })
        .collect();
    let (_, candidate) = DirichletForm::new(triple.n_boundary(), truncated)?.normalized(0.0)?;
    let verification = verify_eigenform(triple, r, &candidate, None, config.residual_tol, tol)?;
    let class = classify(triple, r, &candidate, tol)?;
    let reference = DirichletForm::uniform(triple.n_boundary());
    let (repulsing, skipped) = match repulsing_check(
        triple,
        r,
        &candidate,
        &reference,
        CHECK_TOL,
        config.residual_tol,
        tol,
    ) {
        Ok(report) => (Some(report), None),
        Err(e @ (Error::NotD3(_) | Error::NotDegenerateEigenform(_))) => {
            (None, Some(e.to_string()))
        }
        Err(other) => return Err(other),
    };
    let conclusion = match &repulsing {
        Some(rep) if rep.repulsing_strict => Conclusion::RepulsingLimit,
        Some(_) => Conclusion::NonRepulsingLimit,
        None => Conclusion::LimitNotDiagnosed,
    };
    Ok(ExistenceReport {
        conclusion,
        solve,
        limit: Some(LimitDiagnosis {
            candidate,
            verification,
            class,
            repulsing,
            skipped,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triples::builtin;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn ones(k: usize) -> Weights {
        Weights::uniform(k)
    }

    #[test]
    fn interval_single_iteration() {
        let t = builtin("interval").unwrap();
        let res = solve_eigenform(&t, &ones(2), &SolverConfig::default()).unwrap();
        assert_eq!(res.status, SolveStatus::Converged);
        assert_eq!(res.iterations, 1);
        assert_eq!(res.form.coeffs(), &[1.0]);
        assert!((res.rho - 0.5).abs() < 1e-15);
    }

    #[test]
    fn gasket_uniform() {
        let t = builtin("gasket").unwrap();
        let res = solve_eigenform(&t, &ones(3), &SolverConfig::default()).unwrap();
        assert!(res.converged());
        assert!((res.rho - 0.6).abs() < 1e-12);
        assert!(res.residual < 1e-12);
        for c in res.form.coeffs() {
            assert!((c - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn vicsek_rho() {
        let t = builtin("vicsek").unwrap();
        let res = solve_eigenform(&t, &ones(5), &SolverConfig::default()).unwrap();
        assert!(res.converged());
        assert!((res.rho - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn damped_agrees_with_undamped() {
        let t = builtin("snowflake").unwrap();
        let plain = solve_eigenform(&t, &ones(7), &SolverConfig::default()).unwrap();
        let damped = solve_eigenform(
            &t,
            &ones(7),
            &SolverConfig {
                damping: 0.5,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(plain.converged() && damped.converged());
        for (a, b) in plain.form.coeffs().iter().zip(damped.form.coeffs()) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn degenerate_start_reports_degenerating() {
        let t = builtin("gasket").unwrap();
        let start = DirichletForm::new(3, vec![1.0, 0.0, 0.0]).unwrap();
        let cfg = SolverConfig {
            start: Start::Form(start),
            ..Default::default()
        };
        let res = solve_eigenform(&t, &ones(3), &cfg).unwrap();
        assert_eq!(res.status, SolveStatus::Degenerating);
        assert!((res.rho - 0.5).abs() < 1e-12);
    }

    #[test]
    fn vanishing_image_is_a_status() {
        let t = builtin("tripod").unwrap();
        let start = DirichletForm::single_pair(3, 1, 2, 1.0).unwrap();
        let cfg = SolverConfig {
            start: Start::Form(start),
            ..Default::default()
        };
        let res = solve_eigenform(&t, &ones(3), &cfg).unwrap();
        assert_eq!(res.status, SolveStatus::DegenerateImage);
        assert_eq!(res.iterations, 1);
    }

    #[test]
    fn max_iter_stops() {
        let t = builtin("snowflake").unwrap();
        let res = solve_eigenform(
            &t,
            &ones(7),
            &SolverConfig {
                max_iter: 2,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(res.status, SolveStatus::MaxIter);
        assert_eq!(res.iterations, 2);
    }

    #[test]
    fn config_validation() {
        let t = builtin("gasket").unwrap();
        for cfg in [
            SolverConfig {
                damping: 0.0,
                ..Default::default()
            },
            SolverConfig {
                damping: 1.5,
                ..Default::default()
            },
            SolverConfig {
                tol: 0.0,
                ..Default::default()
            },
            SolverConfig {
                max_iter: 0,
                ..Default::default()
            },
        ] {
            assert!(matches!(
                solve_eigenform(&t, &ones(3), &cfg),
                Err(Error::InvalidArgument(_))
            ));
        }
        assert!(matches!(
            solve_eigenform(&t, &ones(2), &SolverConfig::default()),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn verify_examples() {
        let t = builtin("gasket").unwrap();
        let v = verify_eigenform(
            &t,
            &ones(3),
            &DirichletForm::uniform(3),
            Some(0.6),
            1e-10,
            &tol(),
        )
        .unwrap();
        assert!(v.residual <= 1e-12);
        assert_eq!(v.verdict, Verdict::Eigenform);

        let deg = DirichletForm::new(3, vec![1.0, 0.0, 0.0]).unwrap();
        let v = verify_eigenform(&t, &ones(3), &deg, None, 1e-10, &tol()).unwrap();
        assert_eq!(v.verdict, Verdict::DegenerateEigenform);
        assert!((v.rho - 0.5).abs() < 1e-12);
        assert_eq!(v.ratios[1], None);

        let other = DirichletForm::new(3, vec![0.5, 0.3, 0.2]).unwrap();
        let v = verify_eigenform(&t, &ones(3), &other, None, 1e-10, &tol()).unwrap();
        assert_eq!(v.verdict, Verdict::NotEigenform);
        assert!(v.residual > 1e-10);

        assert!(matches!(
            verify_eigenform(&t, &ones(3), &DirichletForm::zero(3), None, 1e-10, &tol()),
            Err(Error::ZeroForm { .. })
        ));
    }

    #[test]
    fn gasket_repulsing() {
        let t = builtin("gasket").unwrap();
        let deg = DirichletForm::new(3, vec![1.0, 0.0, 0.0]).unwrap();
        let reference = DirichletForm::uniform(3);
        let rep =
            repulsing_check(&t, &ones(3), &deg, &reference, CHECK_TOL, 1e-10, &tol()).unwrap();
        assert!((rep.rho - 0.5).abs() < 1e-12);
        assert!((rep.mu - 2.0 / 3.0).abs() < 1e-10);
        assert!(rep.repulsing_strict && rep.repulsing_nonstrict);
        assert_eq!(rep.infeasible_directions, 0);

        let scaled = reference.scaled(7.5).unwrap();
        let rep2 = repulsing_check(&t, &ones(3), &deg, &scaled, CHECK_TOL, 1e-10, &tol()).unwrap();
        assert!((rep2.mu - rep.mu).abs() < 1e-12);
        assert_eq!(rep2.rho, rep.rho);
    }

    #[test]
    fn repulsing_preconditions() {
        let t = builtin("gasket").unwrap();
        let u = DirichletForm::uniform(3);
        assert!(matches!(
            repulsing_check(&t, &ones(3), &u, &u, CHECK_TOL, 1e-10, &tol()),
            Err(Error::NotDegenerateEigenform(_))
        ));
        let tripod = builtin("tripod").unwrap();
        let d4 = DirichletForm::single_pair(3, 1, 2, 1.0).unwrap();
        assert!(matches!(
            repulsing_check(&tripod, &ones(3), &d4, &u, CHECK_TOL, 1e-10, &tol()),
            Err(Error::NotD3(Stratum::D4))
        ));
    }

    #[test]
    fn mu_serializes_infinity() {
        let rep = RepulsingReport {
            rho: 0.5,
            mu: f64::INFINITY,
            infeasible_directions: 1,
            repulsing_nonstrict: true,
            repulsing_strict: true,
        };
        assert!(serde_json::to_string(&rep)
            .unwrap()
            .contains("\"mu\":\"+inf\""));
    }

    #[test]
    fn existence_examples() {
        let t = builtin("gasket").unwrap();
        let rep = existence_report(&t, &ones(3), &SolverConfig::default()).unwrap();
        assert_eq!(rep.conclusion, Conclusion::EigenformFound);
        assert!((rep.solve.rho - 0.6).abs() < 1e-12);

        let t = builtin("interval").unwrap();
        let r = Weights::new(vec![1.5, 4.0]).unwrap();
        let rep = existence_report(&t, &r, &SolverConfig::default()).unwrap();
        assert_eq!(rep.conclusion, Conclusion::EigenformFound);
        assert!((rep.solve.rho - 6.0 / 5.5).abs() < 1e-12);
    }
}
