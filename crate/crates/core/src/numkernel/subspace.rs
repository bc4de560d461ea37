//! Ranges, null spaces, orthonormal completion and polar decomposition.

use num_complex::Complex64;

use super::{svd, Field, Matrix, TOL_RANK};

/// Orthonormal basis of the range of `a` (left singular vectors with
/// `sigma ≥ TOL_RANK`), as the columns of a `rows × rank` matrix.
pub fn range_isometry(a: &Matrix) -> Matrix {
    let s = svd(a);
    let r = s.rank(TOL_RANK);
    let idx: Vec<usize> = (0..r).collect();
    s.u.select_columns(&idx)
}

/// Orthonormal basis of the null space of `a`: the orthocomplement of the
/// range of `a†`.
pub fn null_basis(a: &Matrix) -> Matrix {
    let row_space = range_isometry(&a.adjoint());
    complete_orthonormal(&row_space)
}

/// Numerical rank at `TOL_RANK`.
pub fn rank(a: &Matrix) -> usize {
    svd(a).rank(TOL_RANK)
}

/// Extends the orthonormal columns of `q` (`m × r`) to an orthonormal basis of
/// the whole space and returns only the new `m × (m − r)` block.
///
/// Completion vectors are drawn deterministically from the standard basis,
/// always taking the candidate with the largest component orthogonal to what
/// has been accepted so far.
pub fn complete_orthonormal(q: &Matrix) -> Matrix {
    let m = q.rows();
    let mut basis: Vec<Vec<Complex64>> = (0..q.cols()).map(|j| q.column(j)).collect();
    let start = basis.len();
    fill_from_standard_basis(m, &mut basis, m.saturating_sub(start));
    let field = q.field();
    Matrix::from_fn(field, m, basis.len() - start, |i, j| basis[start + j][i])
}

/// Orthonormalizes the provided columns in order (two passes of modified
/// Gram-Schmidt) and fills the `None` slots, plus any column that collapses,
/// with standard-basis completion vectors.
pub(crate) fn orthonormalize_with_completion(
    field: Field,
    m: usize,
    cols: Vec<Option<Vec<Complex64>>>,
) -> Matrix {
    let k = cols.len();
    let mut accepted: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    let mut slots: Vec<Option<usize>> = vec![None; k];
    for (slot, col) in cols.into_iter().enumerate() {
        let Some(mut x) = col else { continue };
        project_out(&mut x, &accepted);
        project_out(&mut x, &accepted);
        let nrm = norm(&x);
        if nrm > 0.5 {
            for z in &mut x {
                *z /= nrm;
            }
            slots[slot] = Some(accepted.len());
            accepted.push(x);
        }
    }
    let missing = slots.iter().filter(|s| s.is_none()).count();
    let before = accepted.len();
    fill_from_standard_basis(m, &mut accepted, missing);
    for (next, s) in (before..).zip(slots.iter_mut().filter(|s| s.is_none())) {
        *s = Some(next);
    }
    Matrix::from_fn(field, m, k, |i, j| accepted[slots[j].expect("filled")][i])
}

fn fill_from_standard_basis(m: usize, basis: &mut Vec<Vec<Complex64>>, count: usize) {
    let zero = Complex64::new(0.0, 0.0);
    for _ in 0..count {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for e in 0..m {
            let mut x = vec![zero; m];
            x[e] = Complex64::new(1.0, 0.0);
            project_out(&mut x, basis);
            project_out(&mut x, basis);
            let nrm = norm(&x);
            if best.as_ref().is_none_or(|(b, _)| nrm > *b + 1e-12) {
                best = Some((nrm, x));
            }
        }
        let (nrm, mut x) = best.expect("completion requested in a nonempty space");
        assert!(nrm > 1e-8, "orthonormal completion exhausted the space");
        for z in &mut x {
            *z /= nrm;
        }
        basis.push(x);
    }
}

fn project_out(x: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for b in basis {
        let c: Complex64 = b.iter().zip(x.iter()).map(|(bi, xi)| bi.conj() * xi).sum();
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi -= c * bi;
        }
    }
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Left polar decomposition `a = p·u`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polar {
    /// `(a·a†)^{1/2}`, positive semidefinite, `rows × rows`.
    pub p: Matrix,
    /// Partial isometry `rows × cols` with `u·u†` the range projection of `a`
    /// and `u†·u` the range projection of `a†`.
    pub u: Matrix,
}

/// Left polar decomposition from one SVD: `p = U·Σ·U†`, `u = U_r·V_r†` where
/// `r` counts singular values at or above `TOL_RANK`.
pub fn polar_left(a: &Matrix) -> Polar {
    let field = a.field();
    let (m, n) = a.shape();
    let s = svd(a);
    let p =
        s.u.matmul(&Matrix::diag_real(field, &s.sigma))
            .matmul(&s.u.adjoint());
    let r = s.rank(TOL_RANK);
    let idx: Vec<usize> = (0..r).collect();
    let u = if r == 0 {
        Matrix::zeros(field, m, n)
    } else {
        s.u.select_columns(&idx)
            .matmul(&s.v.select_columns(&idx).adjoint())
    };
    Polar { p, u }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{TOL_ORTHO, TOL_RECON};

    #[test]
    fn null_basis_of_diagonal() {
        let a = Matrix::diag_real(Field::Real, &[0.0, 2.0]);
        let n = null_basis(&a);
        assert_eq!(n.shape(), (2, 1));
        assert!((n.get(0, 0).norm() - 1.0).abs() < 1e-14);
        assert!(n.get(1, 0).norm() < 1e-14);
    }

    #[test]
    fn null_basis_of_identity_is_empty() {
        let n = null_basis(&Matrix::identity(Field::Complex, 4));
        assert_eq!(n.shape(), (4, 0));
    }

    #[test]
    fn null_basis_of_zero_is_unitary() {
        let n = null_basis(&Matrix::zeros(Field::Real, 2, 2));
        assert_eq!(n.shape(), (2, 2));
        assert!(n.isometry_residual() < TOL_ORTHO);
    }

    #[test]
    fn range_of_rank_one_block() {
        let a = Matrix::from_real(2, 2, &[0.6, 0.0, 0.8, 0.0]);
        let r = range_isometry(&a);
        assert_eq!(r.shape(), (2, 1));
        assert!((r.get(0, 0).re - 0.6).abs() < 1e-14);
        assert!((r.get(1, 0).re - 0.8).abs() < 1e-14);
    }

    #[test]
    fn range_of_zero_is_empty() {
        let r = range_isometry(&Matrix::zeros(Field::Complex, 3, 2));
        assert_eq!(r.shape(), (3, 0));
    }

    #[test]
    fn range_of_identity_is_unitary() {
        let r = range_isometry(&Matrix::identity(Field::Real, 3));
        assert_eq!(r.shape(), (3, 3));
        assert!(r.isometry_residual() < TOL_ORTHO);
        assert!(
            r.matmul(&r.adjoint())
                .dist(&Matrix::identity(Field::Real, 3))
                < TOL_ORTHO
        );
    }

    #[test]
    fn polar_of_scalar() {
        let pd = polar_left(&Matrix::from_real(1, 1, &[0.5]));
        assert!((pd.p.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((pd.u.get(0, 0).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn polar_of_zero() {
        let pd = polar_left(&Matrix::zeros(Field::Real, 2, 2));
        assert_eq!(pd.p.max_abs(), 0.0);
        assert_eq!(pd.u.max_abs(), 0.0);
    }

    #[test]
    fn polar_of_unit_column() {
        let a = Matrix::from_real(2, 1, &[0.6, 0.8]);
        let pd = polar_left(&a);
        // p = (a a†)^{1/2} = a a† since a a† is a rank-one projection.
        let aat = a.matmul(&a.adjoint());
        assert!(pd.p.dist(&aat) < 1e-14);
        assert!(pd.u.dist(&a) < 1e-14);
        assert!(pd.p.matmul(&pd.u).dist(&a) < TOL_RECON);
        assert!(pd.u.isometry_residual() < TOL_ORTHO);
    }

    #[test]
    fn completion_of_empty_is_identity() {
        let q = Matrix::zeros(Field::Real, 3, 0);
        let c = complete_orthonormal(&q);
        assert!(c.dist(&Matrix::identity(Field::Real, 3)) < 1e-15);
    }
}
