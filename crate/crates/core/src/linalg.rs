//! Small dense helpers on top of nalgebra. Every matrix in this crate has
//! order at most a few dozen.

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};

use crate::error::{Error, Result};

/// Relative cutoff for deciding the dimension of geometric subspaces
/// (ranges and null spaces of 0/±1-scale matrices).
pub(crate) const SUBSPACE_TOL: f64 = 1e-10;

fn default_cutoff(rows: usize, cols: usize) -> f64 {
    rows.max(cols) as f64 * f64::EPSILON
}

pub(crate) fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
}

/// Pseudoinverse of a symmetric matrix through its eigendecomposition;
/// eigenvalues with `|λ| <= rel_tol * max |λ|` are dropped. More accurate
/// than the SVD route for the small positive semidefinite blocks met here.
pub(crate) fn pseudo_inverse_sym(m: &DMatrix<f64>, rel_tol: Option<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let mut s = m.clone();
    symmetrize(&mut s);
    let eig = SymmetricEigen::new(s);
    let lmax = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, l| acc.max(l.abs()));
    let cutoff = rel_tol.unwrap_or_else(|| default_cutoff(n, n)) * lmax;
    let mut out = DMatrix::zeros(n, n);
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        if l.abs() > cutoff && l != 0.0 {
            let v = eig.eigenvectors.column(k);
            out += v * v.transpose() / l;
        }
    }
    out
}

/// Pseudoinverse and null-space basis of `a` from one SVD, with the
/// [`orthonormal_range`] cutoff for both, so that every direction is either
/// inverted or treated as free, never both.
pub(crate) fn pinv_and_null(a: &DMatrix<f64>, tol: f64) -> (DMatrix<f64>, DMatrix<f64>) {
    let (r, c) = a.shape();
    if r == 0 || c == 0 {
        return (DMatrix::zeros(c, r), DMatrix::identity(c, c));
    }
    let padded = if r < c {
        let mut p = DMatrix::zeros(c, c);
        p.rows_mut(0, r).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = SVD::new(padded, true, true);
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let cutoff = tol * svd.singular_values.max().max(1.0);
    let mut pinv = DMatrix::zeros(c, r);
    let mut null = Vec::new();
    for k in 0..c {
        let s = svd.singular_values[k];
        if s > cutoff {
            pinv += vt.row(k).transpose() * u.column(k).rows(0, r).transpose() / s;
        } else {
            null.push(k);
        }
    }
    let null = DMatrix::from_fn(c, null.len(), |i, j| vt[(null[j], i)]);
    (pinv, null)
}

/// Orthonormal basis (as columns) of the column space of `a`. Singular
/// values at or below `tol * max(σ_max, 1)` are dropped, so `a` is expected
/// to have entries of order one.
pub(crate) fn orthonormal_range(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let (r, c) = a.shape();
    if r == 0 || c == 0 {
        return DMatrix::zeros(r, 0);
    }
    let svd = SVD::new(a.clone(), true, false);
    let smax = svd.singular_values.max();
    let u = svd.u.expect("u requested");
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > tol * smax.max(1.0))
        .collect();
    DMatrix::from_fn(r, keep.len(), |i, j| u[(i, keep[j])])
}

/// Orthonormal basis (as columns) of `{x : a x = 0}`, with the same cutoff
/// convention as [`orthonormal_range`].
pub(crate) fn null_space(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let (r, c) = a.shape();
    if c == 0 {
        return DMatrix::zeros(0, 0);
    }
    if r == 0 {
        return DMatrix::identity(c, c);
    }
    // Pad to at least square so that V is complete.
    let padded = if r < c {
        let mut p = DMatrix::zeros(c, c);
        p.rows_mut(0, r).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = SVD::new(padded, false, true);
    let vt = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.max();
    let null: Vec<usize> = (0..c)
        .filter(|&k| svd.singular_values[k] <= tol * smax.max(1.0))
        .collect();
    DMatrix::from_fn(c, null.len(), |i, j| vt[(null[j], i)])
}

/// Orthonormal basis of `span(subspace)` with the constant direction
/// projected out.
pub(crate) fn nonconstant_basis(subspace: &DMatrix<f64>) -> DMatrix<f64> {
    let n = subspace.nrows();
    let mut p = subspace.clone();
    for mut col in p.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= norm;
        }
    }
    let mut p = orthonormal_range(&p, SUBSPACE_TOL);
    for mut col in p.column_iter_mut() {
        let mean = col.sum() / n as f64;
        col.add_scalar_mut(-mean);
    }
    orthonormal_range(&p, SUBSPACE_TOL)
}

/// Extremal eigenpairs of the symmetric pencil `(a, b)` with `b` positive
/// definite.
#[derive(Debug, Clone)]
pub(crate) struct PencilExtremes {
    pub min: f64,
    pub max: f64,
    pub argmin: DVector<f64>,
    pub argmax: DVector<f64>,
}

pub(crate) fn pencil_extremes(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    def_tol: f64,
) -> Result<PencilExtremes> {
    let n = a.nrows();
    if n == 0 {
        return Err(Error::EmptySubspace);
    }
    let mut bs = b.clone();
    symmetrize(&mut bs);
    let be = SymmetricEigen::new(bs);
    let bmax = be.eigenvalues.max();
    let bmin = be.eigenvalues.min();
    if !(bmin > def_tol * bmax.max(f64::MIN_POSITIVE)) {
        return Err(Error::DenominatorDegenerate { min_eig: bmin });
    }
    // b = U Λ Uᵀ, whiten with W = U Λ^{-1/2}.
    let mut w = be.eigenvectors.clone();
    for (k, mut col) in w.column_iter_mut().enumerate() {
        col /= be.eigenvalues[k].sqrt();
    }
    let mut c = w.transpose() * a * &w;
    symmetrize(&mut c);
    let ce = SymmetricEigen::new(c);
    let imin = ce.eigenvalues.imin();
    let imax = ce.eigenvalues.imax();
    Ok(PencilExtremes {
        min: ce.eigenvalues[imin],
        max: ce.eigenvalues[imax],
        argmin: &w * ce.eigenvectors.column(imin),
        argmax: &w * ce.eigenvectors.column(imax),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinv_and_null_split_directions() {
        let m = DMatrix::from_row_slice(2, 3, &[2.0, 0.0, 0.0, 0.0, 1e-12, 0.0]);
        let (p, null) = pinv_and_null(&m, SUBSPACE_TOL);
        assert!((p[(0, 0)] - 0.5).abs() < 1e-15);
        assert_eq!(p[(1, 1)], 0.0);
        assert_eq!(null.ncols(), 2);
        assert!((&m * &null).norm() < 1e-11);
    }

    #[test]
    fn symmetric_pinv_matches_inverse() {
        let m = DMatrix::from_row_slice(3, 3, &[4.0, -1.0, 0.5, -1.0, 3.0, -0.25, 0.5, -0.25, 2.0]);
        let p = pseudo_inverse_sym(&m, None);
        assert!((&m * &p - DMatrix::identity(3, 3)).norm() < 1e-14);
        let singular = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]);
        let p = pseudo_inverse_sym(&singular, None);
        assert!((&singular * &p * &singular - &singular).norm() < 1e-14);
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let a = DMatrix::from_row_slice(1, 3, &[1.0, -1.0, 0.0]);
        let ns = null_space(&a, SUBSPACE_TOL);
        assert_eq!(ns.ncols(), 2);
        assert!((&a * &ns).norm() < 1e-14);
        assert!((ns.transpose() * &ns - DMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn constants_removed() {
        let s = DMatrix::from_column_slice(3, 2, &[1.0, 1.0, 1.0, 0.0, 0.0, 1.0]);
        let b = nonconstant_basis(&s);
        assert_eq!(b.ncols(), 1);
        assert!(b.column(0).sum().abs() < 1e-14);
    }

    #[test]
    fn pencil_scaling() {
        let b = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let e = pencil_extremes(&(&b * 2.5), &b, 1e-12).unwrap();
        assert!((e.min - 2.5).abs() < 1e-13 && (e.max - 2.5).abs() < 1e-13);
        let singular = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(
            pencil_extremes(&b, &singular, 1e-12),
            Err(Error::DenominatorDegenerate { .. })
        ));
    }
}
