//! One-sided (Hestenes) Jacobi SVD.

use num_complex::Complex64;

use super::subspace::orthonormalize_with_completion;
use super::{Field, Matrix};

const SWEEP_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 60;

/// Thin SVD `a = u·diag(sigma)·v†` with `k = min(rows, cols)` singular triples.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdResult {
    /// `rows × k`, orthonormal columns.
    pub u: Matrix,
    /// Nonincreasing, nonnegative.
    pub sigma: Vec<f64>,
    /// `cols × k`, orthonormal columns.
    pub v: Matrix,
}

impl SvdResult {
    /// `u·diag(sigma)·v†`.
    pub fn reconstruct(&self) -> Matrix {
        let field = self.u.field();
        let s = Matrix::diag_real(field, &self.sigma);
        self.u.matmul(&s).matmul(&self.v.adjoint())
    }

    /// Number of singular values at or above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.sigma.iter().take_while(|&&s| s >= tol).count()
    }
}

/// Singular value decomposition. Deterministic for a fixed input: the sweep
/// order is cyclic by column pairs and ties in the final ordering are broken
/// by column index.
pub fn svd(a: &Matrix) -> SvdResult {
    let field = a.field();
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return SvdResult {
            u: Matrix::zeros(field, m, 0),
            sigma: Vec::new(),
            v: Matrix::zeros(field, n, 0),
        };
    }
    let (mut u, sigma, mut v) = if m >= n {
        hestenes(a)
    } else {
        let (u_t, s, v_t) = hestenes(&a.adjoint());
        (v_t, s, u_t)
    };
    fix_phases(&mut u, &mut v);
    SvdResult { u, sigma, v }
}

/// Largest singular value; zero for empty or zero matrices.
pub fn opnorm(a: &Matrix) -> f64 {
    if a.is_empty() || a.max_abs() == 0.0 {
        return 0.0;
    }
    svd(a).sigma[0]
}

/// Requires `rows ≥ cols`. Returns `(u: m×n, sigma, v: n×n)`.
fn hestenes(a: &Matrix) -> (Matrix, Vec<f64>, Matrix) {
    let field = a.field();
    let (m, n) = a.shape();
    debug_assert!(m >= n);
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|j| a.column(j)).collect();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { one } else { zero }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = w[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = w[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = w[p].iter().zip(&w[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= SWEEP_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = w
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut u_cols: Vec<Option<Vec<Complex64>>> = Vec::with_capacity(n);
    for &j in &order {
        let s = norms[j];
        if s > f64::MIN_POSITIVE * 1e6 {
            u_cols.push(Some(w[j].iter().map(|z| z / s).collect()));
        } else {
            u_cols.push(None);
        }
    }
    let u = orthonormalize_with_completion(field, m, u_cols);
    let vm = Matrix::from_fn(field, n, n, |i, k| v[order[k]][i]);
    (u, sigma, vm)
}

// Rotates columns p, q so that the pair becomes orthogonal:
//   p' = c·p − s·conj(φ)·q
//   q' = s·φ·p + c·q
fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (lo, hi) = cols.split_at_mut(q);
    let cp = &mut lo[p];
    let cq = &mut hi[0];
    let pc = phase.conj();
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x * c - *y * (pc * s);
        let yq = *x * (phase * s) + *y * c;
        *x = xp;
        *y = yq;
    }
}

/// Makes the largest-modulus entry of each left singular vector real
/// positive, rotating the matching right singular vector by the same phase.
fn fix_phases(u: &mut Matrix, v: &mut Matrix) {
    let field = u.field();
    for j in 0..u.cols() {
        let col = u.column(j);
        let best = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if best == 0.0 {
            continue;
        }
        let pivot = col
            .iter()
            .position(|z| z.norm() >= best * (1.0 - 1e-10))
            .expect("nonempty column");
        let z = col[pivot];
        let phase = z.conj() / z.norm();
        let phase = match field {
            Field::Real => Complex64::new(phase.re.signum(), 0.0),
            Field::Complex => phase,
        };
        for i in 0..u.rows() {
            let x = u.get(i, j);
            u.set(i, j, x * phase);
        }
        for i in 0..v.rows() {
            let x = v.get(i, j);
            v.set(i, j, x * phase);
        }
    }
}
