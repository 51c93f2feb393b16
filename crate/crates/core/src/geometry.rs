//! Convex geometry of the normalized simplex `D_N = {E >= 0, |E| = 1}` inside
//! the affine slice `Z = {|E| = 1}`, seen from a fixed interior reference
//! point `Ẽ`.
//!
//! For this polytope the radial projection onto the boundary is explicit:
//! along the ray `Ẽ + t (x - Ẽ)` the first coordinate to reach zero decides
//! the exit point.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::DirichletForm;
use crate::renorm::{normalized_lambda, Weights};
use crate::tolerance::Tolerances;
use crate::triples::FractalTriple;

/// Draw budget for the rejection sampler.
pub const MAX_DRAWS: usize = 1_000_000;

/// A point of `Z`; coordinates may be negative.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint(Vec<f64>);

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(
                "simplex point needs finite coordinates".into(),
            ));
        }
        let sum: f64 = coords.iter().sum();
        let scale: f64 = coords.iter().map(|c| c.abs()).sum::<f64>().max(1.0);
        if (sum - 1.0).abs() > 1e-12 * scale {
            return Err(Error::InvalidArgument(format!(
                "coordinates sum to {sum}, expected 1"
            )));
        }
        Ok(Self(coords))
    }

    pub fn from_form(e: &DirichletForm) -> Result<Self> {
        Self::new(e.coeffs().to_vec())
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Inside the simplex `D_N` (all coordinates nonnegative).
    pub fn in_simplex(&self) -> bool {
        self.0.iter().all(|&c| c >= 0.0)
    }

    /// On `∂D_N`: in the simplex with some coordinate at most `zero_tol`.
    pub fn on_boundary(&self, zero_tol: f64) -> bool {
        self.in_simplex() && self.0.iter().any(|&c| c <= zero_tol)
    }

    pub fn sup_distance(&self, other: &SimplexPoint) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_reference(e_ref: &SimplexPoint, x: &SimplexPoint, tol: &Tolerances) -> Result<()> {
    if e_ref.dim() != x.dim() {
        return Err(Error::Dimension {
            what: "simplex point",
            expected: e_ref.dim(),
            found: x.dim(),
        });
    }
    if e_ref.0.iter().any(|&c| c <= 0.0) {
        return Err(Error::InvalidArgument(
            "reference point must lie in the interior".into(),
        ));
    }
    if x.sup_distance(e_ref) <= tol.ray_tol {
        return Err(Error::AtCenter);
    }
    Ok(())
}

/// Exit point of the ray from `e_ref` through `x`, and its ray parameter `t*`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub point: SimplexPoint,
    pub t: f64,
}

pub fn boundary_projection(
    e_ref: &SimplexPoint,
    x: &SimplexPoint,
    tol: &Tolerances,
) -> Result<Projection> {
    check_reference(e_ref, x, tol)?;
    let (hit, t) = e_ref
        .0
        .iter()
        .zip(&x.0)
        .enumerate()
        .filter(|(_, (r, c))| c < r)
        .map(|(d, (r, c))| (d, r / (r - c)))
        .fold((usize::MAX, f64::INFINITY), |best, cand| {
            if cand.1 < best.1 {
                cand
            } else {
                best
            }
        });
    if hit == usize::MAX {
        // Unreachable for points of Z distinct from the reference.
        return Err(Error::AtCenter);
    }
    let mut point: Vec<f64> = e_ref
        .0
        .iter()
        .zip(&x.0)
        .map(|(r, c)| r + t * (c - r))
        .collect();
    point[hit] = 0.0;
    Ok(Projection {
        point: SimplexPoint(point),
        t,
    })
}

/// The radial projection `p(x)` onto `∂D_N`.
pub fn project_to_boundary(
    e_ref: &SimplexPoint,
    x: &SimplexPoint,
    tol: &Tolerances,
) -> Result<SimplexPoint> {
    boundary_projection(e_ref, x, tol).map(|p| p.point)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtMembership {
    pub inside: bool,
    pub t: f64,
    pub residual: f64,
}

/// Whether `y` lies on the open outward ray `{Ẽ + t (x - Ẽ) : t > 1}`.
pub fn ext_contains(
    e_ref: &SimplexPoint,
    x: &SimplexPoint,
    y: &SimplexPoint,
    tol: &Tolerances,
) -> Result<ExtMembership> {
    check_reference(e_ref, x, tol)?;
    if y.dim() != x.dim() {
        return Err(Error::Dimension {
            what: "simplex point",
            expected: x.dim(),
            found: y.dim(),
        });
    }
    let dir: Vec<f64> = x.0.iter().zip(&e_ref.0).map(|(a, b)| a - b).collect();
    let off: Vec<f64> = y.0.iter().zip(&e_ref.0).map(|(a, b)| a - b).collect();
    let dot: f64 = dir.iter().zip(&off).map(|(a, b)| a * b).sum();
    let len2: f64 = dir.iter().map(|a| a * a).sum();
    let t = dot / len2;
    let residual = off
        .iter()
        .zip(&dir)
        .map(|(o, d)| (o - t * d).abs())
        .fold(0.0, f64::max);
    Ok(ExtMembership {
        inside: residual <= tol.ext_tol && t > 1.0 + tol.ext_tol,
        t,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub hits: usize,
    pub samples: usize,
    /// Largest ray parameter seen; `None` when every sample had a vanishing image.
    pub worst_t: Option<f64>,
    pub degenerate_images: usize,
    pub seed: u64,
}

/// Uniform points of `D_N ∩ {‖E - center‖_∞ <= radius}` with all coordinates
/// positive.
///
/// Proposals are uniform on the homothetic copy `center + s (D_N - center)`,
/// which contains the ball intersection once
/// `s = min(1, radius / min_{d: center_d > 0} center_d)`; proposals outside
/// the ball are rejected.
pub fn sample_neighborhood(
    center: &SimplexPoint,
    radius: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>> {
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    if !center.in_simplex() {
        return Err(Error::InvalidArgument(
            "neighborhood center must lie in the simplex".into(),
        ));
    }
    let min_pos = center
        .0
        .iter()
        .copied()
        .filter(|&c| c > 0.0)
        .fold(f64::INFINITY, f64::min);
    let shrink = (radius / min_pos).min(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    let mut draws = 0;
    while out.len() < samples {
        if draws == MAX_DRAWS {
            return Err(Error::SamplingExhausted { draws });
        }
        draws += 1;
        let raw: Vec<f64> = (0..center.dim()).map(|_| Exp1.sample(&mut rng)).collect();
        let total: f64 = raw.iter().sum();
        let point: Vec<f64> = raw
            .iter()
            .zip(&center.0)
            .map(|(g, c)| c + shrink * (g / total - c))
            .collect();
        let inside_ball = point
            .iter()
            .zip(&center.0)
            .all(|(p, c)| (p - c).abs() <= radius);
        if inside_ball && point.iter().all(|&p| p > 0.0) {
            out.push(point);
        }
    }
    Ok(out)
}

/// Samples interior forms near a boundary point and counts how often the
/// normalized renormalization lands on the outward ray `Ext(E)`.
///
/// Zero hits is evidence for, not proof of, the anti-attracting property; a
/// hit refutes it. Samples are drawn up front, so the report does not depend
/// on the evaluation order.
#[allow(clippy::too_many_arguments)]
pub fn anti_attracting_probe(
    triple: &FractalTriple,
    r: &Weights,
    e_boundary: &SimplexPoint,
    e_ref: &SimplexPoint,
    radius: f64,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<ProbeReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "probe needs at least one sample".into(),
        ));
    }
    let n = triple.n_boundary();
    let len = triple.pair_index().len();
    if e_boundary.dim() != len || e_ref.dim() != len {
        return Err(Error::Dimension {
            what: "simplex point",
            expected: len,
            found: e_boundary.dim(),
        });
    }
    if !e_boundary.on_boundary(tol.zero_tol) {
        return Err(Error::InvalidArgument(
            "probe center must lie on the boundary of the simplex".into(),
        ));
    }
    if e_ref.0.iter().any(|&c| c <= 0.0) {
        return Err(Error::InvalidArgument(
            "reference point must lie in the interior".into(),
        ));
    }
    let points = sample_neighborhood(e_boundary, radius, samples, seed)?;
    let outcomes: Vec<Result<Option<ExtMembership>>> = points
        .into_par_iter()
        .map(|coords| {
            let e = DirichletForm::new(n, coords)?;
            match normalized_lambda(triple, r, &e, tol) {
                Ok((_, image)) => {
                    let x = SimplexPoint(e.coeffs().to_vec());
                    let y = SimplexPoint(image.coeffs().to_vec());
                    ext_contains(e_ref, &x, &y, tol).map(Some)
                }
                Err(Error::DegenerateImage { .. }) => Ok(None),
                Err(other) => Err(other),
            }
        })
        .collect();
    let mut report = ProbeReport {
        hits: 0,
        samples,
        worst_t: None,
        degenerate_images: 0,
        seed,
    };
    for outcome in outcomes {
        match outcome? {
            Some(m) => {
                report.hits += usize::from(m.inside);
                report.worst_t = Some(report.worst_t.map_or(m.t, |w| w.max(m.t)));
            }
            None => report.degenerate_images += 1,
        }
    }
    Ok(report)
}
