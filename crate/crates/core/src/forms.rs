//! Dirichlet forms on the boundary `V0`, stored as their coefficient vector
//! over the pair set `J` (lexicographic order), and dense quadratic-form
//! matrices for forms on arbitrary vertex sets.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, nonconstant_basis, pencil_extremes};
use crate::triples::PairIndex;

/// Relative definiteness threshold for denominators of Rayleigh quotients.
pub const DEF_TOL: f64 = 1e-12;

/// On-disk representation of a form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormFile {
    pub n_boundary: usize,
    pub coeffs: Vec<f64>,
}

/// `E(u) = Σ_{d ∈ J} E_d (u(P_a) - u(P_b))²` with `E_d >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletForm {
    n_boundary: usize,
    coeffs: Vec<f64>,
}

impl DirichletForm {
    pub fn new(n_boundary: usize, coeffs: Vec<f64>) -> Result<Self> {
        if n_boundary < 2 {
            return Err(Error::InvalidArgument(format!(
                "forms need at least 2 boundary vertices, got {n_boundary}"
            )));
        }
        let expected = PairIndex::new(n_boundary).len();
        if coeffs.len() != expected {
            return Err(Error::Dimension {
                what: "form coefficients",
                expected,
                found: coeffs.len(),
            });
        }
        if let Some((index, &value)) = coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_finite() || **c < 0.0)
        {
            return Err(Error::InvalidCoefficient { index, value });
        }
        Ok(Self { n_boundary, coeffs })
    }

    /// The barycenter of the normalized simplex: every coefficient `1/#J`.
    pub fn uniform(n_boundary: usize) -> Self {
        let len = PairIndex::new(n_boundary).len();
        Self {
            n_boundary,
            coeffs: vec![1.0 / len as f64; len],
        }
    }

    /// Form with a single coefficient on the zero-based pair `{a, b}`.
    pub fn single_pair(n_boundary: usize, a: usize, b: usize, value: f64) -> Result<Self> {
        let pairs = PairIndex::new(n_boundary);
        let mut coeffs = vec![0.0; pairs.len()];
        coeffs[pairs.index(a, b)] = value;
        Self::new(n_boundary, coeffs)
    }

    pub fn zero(n_boundary: usize) -> Self {
        Self {
            n_boundary,
            coeffs: vec![0.0; PairIndex::new(n_boundary).len()],
        }
    }

    pub fn from_file(file: FormFile) -> Result<Self> {
        Self::new(file.n_boundary, file.coeffs)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> FormFile {
        FormFile {
            n_boundary: self.n_boundary,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("form serialization cannot fail")
    }

    pub fn n_boundary(&self) -> usize {
        self.n_boundary
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn pair_index(&self) -> PairIndex {
        PairIndex::new(self.n_boundary)
    }

    /// `|E| = Σ_d E_d`.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    pub fn min_coefficient(&self) -> f64 {
        self.coeffs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_coefficient(&self) -> f64 {
        self.coeffs.iter().copied().fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.n_boundary, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, u: &[f64]) -> Result<f64> {
        if u.len() != self.n_boundary {
            return Err(Error::Dimension {
                what: "function on V0",
                expected: self.n_boundary,
                found: u.len(),
            });
        }
        Ok(self
            .pair_index()
            .iter()
            .zip(&self.coeffs)
            .map(|(p, c)| {
                let diff = u[p.first] - u[p.second];
                c * diff * diff
            })
            .sum())
    }

    /// Conductance Laplacian: `-E_{ab}` off the diagonal, zero row sums.
    pub fn laplacian(&self) -> QuadraticFormMatrix {
        let n = self.n_boundary;
        let mut m = DMatrix::zeros(n, n);
        for (p, &c) in self.pair_index().iter().zip(&self.coeffs) {
            m[(p.first, p.second)] -= c;
            m[(p.second, p.first)] -= c;
            m[(p.first, p.first)] += c;
            m[(p.second, p.second)] += c;
        }
        QuadraticFormMatrix { matrix: m }
    }

    /// Returns `(|E|, E/|E|)`. The largest coefficient absorbs the rounding
    /// so that zero coefficients stay exactly zero.
    pub fn normalized(&self, zero_tol: f64) -> Result<(f64, Self)> {
        let norm = self.norm();
        if !(norm > zero_tol) {
            return Err(Error::ZeroForm { norm });
        }
        let mut coeffs: Vec<f64> = self.coeffs.iter().map(|c| c / norm).collect();
        let imax = coeffs
            .iter()
            .enumerate()
            .fold(0, |best, (i, &c)| if c > coeffs[best] { i } else { best });
        let rest: f64 = coeffs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != imax)
            .map(|(_, c)| c)
            .sum();
        coeffs[imax] = 1.0 - rest;
        Ok((
            norm,
            Self {
                n_boundary: self.n_boundary,
                coeffs,
            },
        ))
    }

    /// Connected components of the graph whose edges are the pairs with
    /// `E_d > zero_tol * |E|`. Components are sorted and listed by their
    /// smallest vertex.
    pub fn components(&self, zero_tol: f64) -> Vec<Vec<usize>> {
        let n = self.n_boundary;
        let threshold = zero_tol * self.norm();
        let mut adjacent = vec![Vec::new(); n];
        for (p, &c) in self.pair_index().iter().zip(&self.coeffs) {
            if c > threshold {
                adjacent[p.first].push(p.second);
                adjacent[p.second].push(p.first);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            label[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adjacent[v] {
                    if label[w] == usize::MAX {
                        label[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Irreducible means the form vanishes only on constants.
    pub fn is_irreducible(&self, zero_tol: f64) -> bool {
        self.components(zero_tol).len() == 1
    }

    /// Orthonormal basis of `E⁻¹(0)`: normalized indicators of the
    /// positivity-graph components, one column per component.
    pub fn kernel_basis(&self, zero_tol: f64) -> DMatrix<f64> {
        let comps = self.components(zero_tol);
        let mut k = DMatrix::zeros(self.n_boundary, comps.len());
        for (j, comp) in comps.iter().enumerate() {
            let h = 1.0 / (comp.len() as f64).sqrt();
            for &v in comp {
                k[(v, j)] = h;
            }
        }
        k
    }
}

/// Recovers the coefficients of a form in `D` from its values via
/// `E_{ab} = ¼ (E(χ_a - χ_b) - E(χ_a + χ_b))`.
///
/// Nonnegativity is deliberately not enforced, so callers can detect
/// numerical violations of the Markov property.
pub fn coefficients_from_form(n_boundary: usize, q: impl Fn(&[f64]) -> f64) -> Vec<f64> {
    let mut probe = vec![0.0; n_boundary];
    PairIndex::new(n_boundary)
        .iter()
        .map(|p| {
            probe[p.first] = 1.0;
            probe[p.second] = -1.0;
            let minus = q(&probe);
            probe[p.second] = 1.0;
            let plus = q(&probe);
            probe[p.first] = 0.0;
            probe[p.second] = 0.0;
            0.25 * (minus - plus)
        })
        .collect()
}

/// Symmetric positive semidefinite matrix with zero row sums, representing
/// `u ↦ uᵀ Q u`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticFormMatrix {
    matrix: DMatrix<f64>,
}

impl QuadraticFormMatrix {
    /// Checked constructor with relative tolerances `1e-10`.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let q = Self { matrix };
        q.check(1e-10, 1e-10)?;
        Ok(q)
    }

    /// Symmetrizes and wraps a matrix produced by a trusted assembly.
    pub(crate) fn from_trusted(mut matrix: DMatrix<f64>) -> Self {
        linalg::symmetrize(&mut matrix);
        Self { matrix }
    }

    /// Verifies symmetry and zero row sums to `sym_tol * ‖Q‖` and
    /// `λ_min >= -psd_tol * ‖Q‖`.
    pub fn check(&self, sym_tol: f64, psd_tol: f64) -> Result<()> {
        let m = &self.matrix;
        if !m.is_square() {
            return Err(Error::InvalidArgument(format!(
                "quadratic form matrix is {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let scale = m.amax().max(f64::MIN_POSITIVE);
        let asym = (m - m.transpose()).amax();
        if asym > sym_tol * scale {
            return Err(Error::InvalidArgument(format!(
                "matrix is not symmetric (defect {asym:e})"
            )));
        }
        let row_sum = m.row_iter().map(|r| r.sum().abs()).fold(0.0, f64::max);
        if row_sum > sym_tol * scale {
            return Err(Error::InvalidArgument(format!(
                "row sums do not vanish (max {row_sum:e})"
            )));
        }
        if m.nrows() > 0 {
            let mut s = m.clone();
            linalg::symmetrize(&mut s);
            let lmin = s.symmetric_eigenvalues().min();
            if lmin < -psd_tol * scale {
                return Err(Error::InvalidArgument(format!(
                    "matrix is not PSD (eigenvalue {lmin:e})"
                )));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        assert_eq!(u.len(), self.vertex_count(), "function length");
        let v = DVector::from_column_slice(u);
        v.dot(&(&self.matrix * &v))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            matrix: &self.matrix * c,
        }
    }
}

/// Extremal generalized Rayleigh quotients `num(u)/den(u)` over a subspace
/// taken modulo constants, with the maximizing and minimizing directions.
#[derive(Debug, Clone)]
pub struct RayleighBounds {
    pub min: f64,
    pub max: f64,
    pub argmin: DVector<f64>,
    pub argmax: DVector<f64>,
}

/// Extremal values of `num/den` on `span(subspace) ∩ constants⊥`.
///
/// Both forms vanish on constants, so the ratio on a vector equals the ratio
/// on its mean-free part.
pub fn rayleigh_bounds(
    num: &QuadraticFormMatrix,
    den: &QuadraticFormMatrix,
    subspace: &DMatrix<f64>,
) -> Result<RayleighBounds> {
    let n = num.vertex_count();
    if den.vertex_count() != n {
        return Err(Error::Dimension {
            what: "denominator form",
            expected: n,
            found: den.vertex_count(),
        });
    }
    if subspace.nrows() != n {
        return Err(Error::Dimension {
            what: "subspace basis",
            expected: n,
            found: subspace.nrows(),
        });
    }
    let v = nonconstant_basis(subspace);
    if v.ncols() == 0 {
        return Err(Error::EmptySubspace);
    }
    let a = v.transpose() * num.matrix() * &v;
    let b = v.transpose() * den.matrix() * &v;
    let e = pencil_extremes(&a, &b, DEF_TOL)?;
    Ok(RayleighBounds {
        min: e.min,
        max: e.max,
        argmin: &v * e.argmin,
        argmax: &v * e.argmax,
    })
}

/// Constants `(c, c')` with `c E1 <= E2 <= c' E1`, both forms irreducible.
pub fn comparability(e1: &DirichletForm, e2: &DirichletForm, zero_tol: f64) -> Result<(f64, f64)> {
    if e1.n_boundary() != e2.n_boundary() {
        return Err(Error::Dimension {
            what: "second form",
            expected: e1.n_boundary(),
            found: e2.n_boundary(),
        });
    }
    if !e1.is_irreducible(zero_tol) || !e2.is_irreducible(zero_tol) {
        return Err(Error::NotIrreducible);
    }
    let full = DMatrix::identity(e1.n_boundary(), e1.n_boundary());
    let b = rayleigh_bounds(&e2.laplacian(), &e1.laplacian(), &full)?;
    Ok((b.min, b.max))
}
