//! The renormalization operator `Λ_r` and the pieces built around it.
//!
//! `Λ_r(E)` is the trace on `V0` of the level-one form
//! `S_{1,r}(E)(v) = Σ_i r_i E(v∘ψ_i)`: the interior vertices are eliminated by
//! a Schur complement with a pseudoinverse of the interior block, which is
//! singular exactly when some interior vertices carry no conductance to the
//! rest of the network.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{coefficients_from_form, rayleigh_bounds, DirichletForm, QuadraticFormMatrix};
use crate::linalg::{
    null_space, orthonormal_range, pinv_and_null, pseudo_inverse_sym, SUBSPACE_TOL,
};
use crate::tolerance::Tolerances;
use crate::triples::FractalTriple;

/// Positive weight per cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Weights(Vec<f64>);

impl Weights {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((cell, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::InvalidWeight { cell, value });
        }
        Ok(Self(values))
    }

    pub fn uniform(k: usize) -> Self {
        Self(vec![1.0; k])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.0.iter().map(|w| w * c).collect())
    }
}

impl TryFrom<Vec<f64>> for Weights {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Weights> for Vec<f64> {
    fn from(w: Weights) -> Self {
        w.0
    }
}

fn check_dims(triple: &FractalTriple, r: &Weights, e: &DirichletForm) -> Result<()> {
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

/// Matrix of `S_{1,r}(E)` on `V1`.
pub fn assemble_s1(
    triple: &FractalTriple,
    r: &Weights,
    e: &DirichletForm,
) -> Result<QuadraticFormMatrix> {
    check_dims(triple, r, e)?;
    let m = triple.n_total();
    let pairs = triple.pair_index();
    let mut q = DMatrix::zeros(m, m);
    for (row, &w) in triple.cells().iter().zip(r.as_slice()) {
        for (p, &c) in pairs.iter().zip(e.coeffs()) {
            let g = w * c;
            if g == 0.0 {
                continue;
            }
            let (x, y) = (row[p.first], row[p.second]);
            q[(x, x)] += g;
            q[(y, y)] += g;
            q[(x, y)] -= g;
            q[(y, x)] -= g;
        }
    }
    Ok(QuadraticFormMatrix::from_trusted(q))
}

/// Trace on `V0`: `A - B C⁺ Bᵀ` for the boundary/interior split
/// `Q = [[A, B], [Bᵀ, C]]`.
///
/// For PSD `Q` the range of `Bᵀ` lies in the range of `C`, so the infimum over
/// extensions is attained and equals this Schur complement even when `C` is
/// singular.
pub fn trace_to_boundary(
    q: &QuadraticFormMatrix,
    triple: &FractalTriple,
    rank_tol: Option<f64>,
) -> Result<QuadraticFormMatrix> {
    if q.vertex_count() != triple.n_total() {
        return Err(Error::Dimension {
            what: "level-one form",
            expected: triple.n_total(),
            found: q.vertex_count(),
        });
    }
    schur_complement(q, triple.n_boundary(), rank_tol)
}

/// Eliminates vertices `keep..` of `q`, keeping `0..keep`.
pub fn schur_complement(
    q: &QuadraticFormMatrix,
    keep: usize,
    rank_tol: Option<f64>,
) -> Result<QuadraticFormMatrix> {
    let m = q.vertex_count();
    if keep > m {
        return Err(Error::Dimension {
            what: "kept vertices",
            expected: m,
            found: keep,
        });
    }
    let full = q.matrix();
    let a = full.view((0, 0), (keep, keep)).into_owned();
    if m == keep {
        return Ok(QuadraticFormMatrix::from_trusted(a));
    }
    let b = full.view((0, keep), (keep, m - keep)).into_owned();
    let c = full.view((keep, keep), (m - keep, m - keep)).into_owned();
    let cinv = pseudo_inverse_sym(&c, rank_tol);
    Ok(QuadraticFormMatrix::from_trusted(
        a - &b * cinv * b.transpose(),
    ))
}

/// Coefficients of `Λ_r(E)` exactly as extracted by polarization, before any
/// clamping.
pub fn lambda_r_coefficients(
    triple: &FractalTriple,
    r: &Weights,
    e: &DirichletForm,
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    let s1 = assemble_s1(triple, r, e)?;
    let trace = trace_to_boundary(&s1, triple, tol.rank_tol)?;
    Ok(coefficients_from_form(triple.n_boundary(), |u| {
        trace.eval(u)
    }))
}

/// `Λ_r(E)`. Slightly negative coefficients (rounding) are clamped to zero;
/// anything below `-markov_tol * |E| * max r` is a hard error.
pub fn lambda_r(
    triple: &FractalTriple,
    r: &Weights,
    e: &DirichletForm,
    tol: &Tolerances,
) -> Result<DirichletForm> {
    let mut coeffs = lambda_r_coefficients(triple, r, e, tol)?;
    let threshold = tol.markov_tol * e.norm() * r.max();
    let pairs = triple.pair_index();
    for (k, c) in coeffs.iter_mut().enumerate() {
        if *c < 0.0 {
            if *c < -threshold {
                let p = pairs.pair(k);
                return Err(Error::MarkovViolation {
                    pair: (p.first, p.second),
                    value: *c,
                });
            }
            *c = 0.0;
        }
    }
    DirichletForm::new(triple.n_boundary(), coeffs)
}

/// `(|Λ_r(E)|, Λ_r(E)/|Λ_r(E)|)`.
pub fn normalized_lambda(
    triple: &FractalTriple,
    r: &Weights,
    e: &DirichletForm,
    tol: &Tolerances,
) -> Result<(f64, DirichletForm)> {
    let image = lambda_r(triple, r, e, tol)?;
    let norm = image.norm();
    if !(norm > tol.image_zero_tol * e.norm()) {
        return Err(Error::DegenerateImage { norm });
    }
    image.normalized(0.0)
}

/// Strata of the normalized simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stratum {
    /// All coefficients positive (the interior).
    D1,
    /// Irreducible with some zero coefficient.
    D2,
    /// Reducible with nonvanishing image.
    D3,
    /// Reducible with `Λ_r(E) = 0`.
    D4,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryClass {
    pub stratum: Stratum,
    pub components: Vec<Vec<usize>>,
    pub image_norm: f64,
    pub min_coefficient: f64,
}

/// Places a normalized form in one of the strata D1..D4.
pub fn classify(
    triple: &FractalTriple,
    r: &Weights,
    e: &DirichletForm,
    tol: &Tolerances,
) -> Result<BoundaryClass> {
    check_dims(triple, r, e)?;
    if (e.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "classify expects |E| = 1, got {}",
            e.norm()
        )));
    }
    let image_norm = lambda_r(triple, r, e, tol)?.norm();
    let components = e.components(tol.zero_tol);
    let min_coefficient = e.min_coefficient();
    let stratum = if components.len() == 1 {
        if min_coefficient > tol.zero_tol {
            Stratum::D1
        } else {
            Stratum::D2
        }
    } else if image_norm > tol.image_zero_tol {
        Stratum::D3
    } else {
        Stratum::D4
    };
    Ok(BoundaryClass {
        stratum,
        components,
        image_norm,
        min_coefficient,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImageCrossCheck {
    pub weights: Vec<f64>,
    pub image_norm: f64,
    pub vanishes: bool,
}

/// Re-evaluates whether `Λ_r(E)` vanishes at a second, random weight vector
/// (log-uniform in `[0.1, 10]` per cell). Diagnostic only.
pub fn vanishing_image_crosscheck(
    triple: &FractalTriple,
    e: &DirichletForm,
    seed: u64,
    tol: &Tolerances,
) -> Result<ImageCrossCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..triple.n_cells())
        .map(|_| 10f64.powf(rng.random_range(-1.0..=1.0)))
        .collect();
    let r = Weights::new(weights.clone())?;
    let image_norm = lambda_r(triple, &r, e, tol)?.norm();
    Ok(ImageCrossCheck {
        weights,
        image_norm,
        vanishes: image_norm <= tol.image_zero_tol * e.norm(),
    })
}

/// The kernel-constrained renormalization
/// `u ↦ inf { S_{1,r}(E)(v) : v = u on V0, v∘ψ_i ∈ Ē⁻¹(0) for all i }`
/// for `u` in the kernel of `Ē`.
#[derive(Debug, Clone)]
pub struct ConstrainedForm {
    form: QuadraticFormMatrix,
    kernel: DMatrix<f64>,
    feasible: DMatrix<f64>,
}

impl ConstrainedForm {
    /// Quadratic form on functions on `V0`; only meaningful on
    /// [`ConstrainedForm::feasible_basis`].
    pub fn boundary_form(&self) -> &QuadraticFormMatrix {
        &self.form
    }

    /// Orthonormal basis of the kernel the form was built on.
    pub fn kernel_basis(&self) -> &DMatrix<f64> {
        &self.kernel
    }

    /// Orthonormal basis of the kernel directions for which the constraint
    /// set is non-empty.
    pub fn feasible_basis(&self) -> &DMatrix<f64> {
        &self.feasible
    }

    pub fn infeasible_directions(&self) -> usize {
        self.kernel.ncols() - self.feasible.ncols()
    }

    /// Matrix of the form in the coordinates of the kernel basis.
    pub fn kernel_coordinates(&self) -> DMatrix<f64> {
        self.kernel.transpose() * self.form.matrix() * &self.kernel
    }

    /// Value at `u`, or `+∞` when no admissible extension exists (this
    /// includes any `u` outside the kernel).
    pub fn value(&self, u: &[f64]) -> f64 {
        let v = nalgebra::DVector::from_column_slice(u);
        let residual = &v - &self.feasible * (self.feasible.transpose() * &v);
        if residual.norm() > 1e-8 * v.norm().max(f64::MIN_POSITIVE) {
            return f64::INFINITY;
        }
        self.form.eval(u)
    }
}

/// Builds `Λ_{r,Ē}(E)` by encoding `v∘ψ_i ∈ Ē⁻¹(0)` as linear equalities
/// `(I - K Kᵀ) v∘ψ_i = 0`, parametrizing their null space, and minimizing the
/// level-one form over the free variables that leave the boundary values fixed.
pub fn constrained_form(
    triple: &FractalTriple,
    r: &Weights,
    e: &DirichletForm,
    kernel: &DMatrix<f64>,
    tol: &Tolerances,
) -> Result<ConstrainedForm> {
    let n = triple.n_boundary();
    let m = triple.n_total();
    if kernel.nrows() != n {
        return Err(Error::Dimension {
            what: "kernel basis",
            expected: n,
            found: kernel.nrows(),
        });
    }
    let k = orthonormal_range(kernel, SUBSPACE_TOL);
    let q = assemble_s1(triple, r, e)?;

    let complement = DMatrix::identity(n, n) - &k * k.transpose();
    let mut constraints = DMatrix::zeros(n * triple.n_cells(), m);
    for (i, row) in triple.cells().iter().enumerate() {
        for (a, &vertex) in row.iter().enumerate() {
            for b in 0..n {
                constraints[(i * n + b, vertex)] += complement[(b, a)];
            }
        }
    }
    let admissible = null_space(&constraints, SUBSPACE_TOL);
    let reduced = admissible.transpose() * q.matrix() * &admissible;
    let boundary = admissible.rows(0, n).into_owned();

    // Kernel directions reachable as boundary values of admissible v.
    let reach = orthonormal_range(&boundary, SUBSPACE_TOL);
    let unreachable = &k - &reach * (reach.transpose() * &k);
    let feasible = orthonormal_range(&(&k * null_space(&unreachable, SUBSPACE_TOL)), SUBSPACE_TOL);

    // z = B⁺u + W y with W spanning null(B); minimize over y.
    let (particular, free) = pinv_and_null(&boundary, SUBSPACE_TOL);
    let schur = if free.ncols() == 0 {
        reduced
    } else {
        let rw = &reduced * &free;
        let wrw = free.transpose() * &rw;
        &reduced - &rw * pseudo_inverse_sym(&wrw, tol.rank_tol) * rw.transpose()
    };
    let form = QuadraticFormMatrix::from_trusted(particular.transpose() * schur * &particular);
    Ok(ConstrainedForm {
        form,
        kernel: k,
        feasible,
    })
}

/// Extremal ratios of `E/E_ref` over the non-constant kernel directions.
///
/// `eta` is the maximum of the ratio; the inequality `E(u) >= η Ẽ(u)` on the
/// kernel holds for the minimum instead, so both are reported.
#[derive(Debug, Clone)]
pub struct Eta {
    pub eta: f64,
    pub min_ratio: f64,
    pub maximizer: Vec<f64>,
}

pub fn eta(
    e: &DirichletForm,
    e_ref: &DirichletForm,
    kernel: &DMatrix<f64>,
    tol: &Tolerances,
) -> Result<Eta> {
    if !e_ref.is_irreducible(tol.zero_tol) {
        return Err(Error::NotIrreducible);
    }
    match rayleigh_bounds(&e.laplacian(), &e_ref.laplacian(), kernel) {
        Ok(b) => Ok(Eta {
            eta: b.max,
            min_ratio: b.min,
            maximizer: b.argmax.iter().copied().collect(),
        }),
        Err(Error::EmptySubspace) => Err(Error::TrivialKernel),
        Err(other) => Err(other),
    }
}
