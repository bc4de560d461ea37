use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{opnorm, Field};
use crate::error::{Error, Result};

/// A dense row-major matrix over [`Field`].
///
/// Zero rows or zero columns are allowed; such matrices carry maps into or
/// out of the zero space.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    /// Builds a matrix from row-major entries. Real matrices have their
    /// imaginary parts cleared.
    ///
    /// # Panics
    ///
    /// If `data.len() != rows * cols`.
    pub fn new(field: Field, rows: usize, cols: usize, mut data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        if field == Field::Real {
            for z in &mut data {
                z.im = 0.0;
            }
        }
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self::new(
            field,
            rows,
            cols,
            vec![Complex64::new(0.0, 0.0); rows * cols],
        )
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(field, rows, cols, data)
    }

    /// Real matrix from row-major `f64` entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        Self::new(
            Field::Real,
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// Matrix of the given field from row-major `f64` entries.
    pub fn from_reals(field: Field, rows: usize, cols: usize, entries: &[f64]) -> Self {
        Self::new(
            field,
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn diag(field: Field, entries: &[Complex64]) -> Self {
        let n = entries.len();
        Self::from_fn(field, n, n, |i, j| {
            if i == j {
                entries[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn diag_real(field: Field, entries: &[f64]) -> Self {
        let e: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diag(field, &e)
    }

    /// A single column vector.
    pub fn column_vector(field: Field, entries: &[Complex64]) -> Self {
        Self::new(field, entries.len(), 1, entries.to_vec())
    }

    /// The 1×1 matrix holding `z`.
    pub fn scalar(field: Field, z: Complex64) -> Self {
        Self::new(field, 1, 1, vec![z])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: Complex64) {
        let z = match self.field {
            Field::Real => Complex64::new(z.re, 0.0),
            Field::Complex => z,
        };
        self.data[i * self.cols + j] = z;
    }

    /// Reinterprets the entries over another field. Moving to the real field
    /// drops imaginary parts.
    pub fn with_field(&self, field: Field) -> Self {
        Self::new(field, self.rows, self.cols, self.data.clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).conj()
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Matrix product.
    ///
    /// # Panics
    ///
    /// If the inner dimensions disagree.
    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let field = join_field(self.field, rhs.field);
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Matrix::new(field, self.rows, rhs.cols, out)
    }

    pub fn scale(&self, z: Complex64) -> Matrix {
        Matrix::new(
            self.field,
            self.rows,
            self.cols,
            self.data.iter().map(|x| x * z).collect(),
        )
    }

    pub fn scale_real(&self, x: f64) -> Matrix {
        self.scale(Complex64::new(x, 0.0))
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "elementwise op: shape mismatch");
        Matrix::new(
            join_field(self.field, rhs.field),
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        )
    }

    /// Kronecker product, left factor major: `(a⊗b)[i*p+k, j*q+l] = a[i,j]·b[k,l]`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let (p, q) = rhs.shape();
        Matrix::from_fn(
            join_field(self.field, rhs.field),
            self.rows * p,
            self.cols * q,
            |r, c| self.get(r / p, c / q) * rhs.get(r % p, c % q),
        )
    }

    /// Block-diagonal sum `[[a, 0], [0, b]]`.
    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(
            join_field(self.field, rhs.field),
            self.rows + rhs.rows,
            self.cols + rhs.cols,
        );
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, rhs);
        out
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    /// Columns listed in `idx`, in order.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// Horizontal concatenation `[a | b]`.
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack: row mismatch");
        let mut out = Matrix::zeros(
            join_field(self.field, rhs.field),
            self.rows,
            self.cols + rhs.cols,
        );
        out.paste(0, 0, self);
        out.paste(0, self.cols, rhs);
        out
    }

    /// Vertical concatenation `[a ; b]`.
    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack: column mismatch");
        let mut out = Matrix::zeros(
            join_field(self.field, rhs.field),
            self.rows + rhs.rows,
            self.cols,
        );
        out.paste(0, 0, self);
        out.paste(self.rows, 0, rhs);
        out
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Operator norm (largest singular value).
    pub fn opnorm(&self) -> f64 {
        opnorm(self)
    }

    /// Operator-norm distance `‖self − other‖`.
    pub fn dist(&self, other: &Matrix) -> f64 {
        opnorm(&(self - other))
    }

    /// `‖self†·self − I‖`.
    pub fn isometry_residual(&self) -> f64 {
        let g = self.adjoint().matmul(self);
        g.dist(&Matrix::identity(self.field, self.cols))
    }

    /// Whether every entry is finite.
    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Strict conversion from the JSON form: lengths must match, real
    /// matrices must carry zero imaginary parts, all entries finite.
    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        if j.entries.len() != j.rows * j.cols {
            return Err(Error::Parse(format!(
                "matrix declares {}x{} but has {} entries",
                j.rows,
                j.cols,
                j.entries.len()
            )));
        }
        let mut data = Vec::with_capacity(j.entries.len());
        for (n, [re, im]) in j.entries.iter().copied().enumerate() {
            if !(re.is_finite() && im.is_finite()) {
                return Err(Error::Parse(format!("entry {n} is not finite")));
            }
            if j.field == Field::Real && im != 0.0 {
                return Err(Error::Parse(format!(
                    "entry {n} of a real matrix has imaginary part {im}"
                )));
            }
            data.push(Complex64::new(re, im));
        }
        Ok(Matrix::new(j.field, j.rows, j.cols, data))
    }
}

/// Wire form: `{"field": "R"|"C", "rows": m, "cols": n, "entries": [[re, im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

fn join_field(a: Field, b: Field) -> Field {
    if a == Field::Complex || b == Field::Complex {
        Field::Complex
    } else {
        Field::Real
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix<{}> {}x{}", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                match self.field {
                    Field::Real => write!(f, " {:>10.6}", z.re)?,
                    Field::Complex => write!(f, " {:>9.5}{:+.5}i", z.re, z.im)?,
                }
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale_real(-1.0)
    }
}
