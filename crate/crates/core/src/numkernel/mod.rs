//! Dense linear algebra over the real or complex field.
//!
//! Every categorical construction in this crate bottoms out here: operator
//! norms, a one-sided Jacobi SVD, polar decomposition, and orthonormal bases
//! for null spaces and ranges. Real matrices are stored as complex matrices
//! whose imaginary parts are identically zero; the [`Field`] tag travels with
//! the data and is enforced at construction.

mod matrix;
mod subspace;
mod svd;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use matrix::{Matrix, MatrixJson};
pub use subspace::{complete_orthonormal, null_basis, polar_left, range_isometry, rank, Polar};
pub use svd::{opnorm, svd, SvdResult};

/// Rank decisions: singular values below this count as zero.
pub const TOL_RANK: f64 = 1e-9;
/// Reconstruction residuals of factorizations.
pub const TOL_RECON: f64 = 1e-8;
/// Orthonormality residuals (`q†q = I`).
pub const TOL_ORTHO: f64 = 1e-9;
/// Morphism equality, relative to `max(1, norms)`.
pub const TOL_EQ: f64 = 1e-7;
/// Admission slack on `‖t‖ ≤ 1`.
pub const TOL_CON: f64 = 1e-9;

/// Numerical tolerances used by the verification harness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rank: f64,
    pub recon: f64,
    pub ortho: f64,
    pub eq: f64,
    pub con: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: TOL_RANK,
            recon: TOL_RECON,
            ortho: TOL_ORTHO,
            eq: TOL_EQ,
            con: TOL_CON,
        }
    }
}

impl Tolerances {
    /// Applies a named override (`tol_eq`, `tol_rank`, ...). Unknown names are
    /// rejected.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), String> {
        let slot = match name {
            "tol_rank" | "rank" => &mut self.rank,
            "tol_recon" | "recon" => &mut self.recon,
            "tol_ortho" | "ortho" => &mut self.ortho,
            "tol_eq" | "eq" => &mut self.eq,
            "tol_con" | "con" => &mut self.con,
            other => return Err(format!("unknown tolerance `{other}`")),
        };
        if !(value.is_finite() && value > 0.0) {
            return Err(format!("tolerance `{name}` must be positive, got {value}"));
        }
        *slot = value;
        Ok(())
    }
}

/// The base field of a Hilbert space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => f.write_str("R"),
            Field::Complex => f.write_str("C"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R" | "r" | "real" => Ok(Field::Real),
            "C" | "c" | "complex" => Ok(Field::Complex),
            other => Err(format!("unknown field `{other}` (expected R or C)")),
        }
    }
}

/// An element of the base field, tagged with the field it lives in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scalar {
    field: Field,
    value: Complex64,
}

impl Scalar {
    pub fn real(x: f64) -> Self {
        Self {
            field: Field::Real,
            value: Complex64::new(x, 0.0),
        }
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Self {
            field: Field::Complex,
            value: Complex64::new(re, im),
        }
    }

    /// Builds a scalar of the given field. For the real field the imaginary
    /// part is discarded.
    pub fn new(field: Field, value: Complex64) -> Self {
        let value = match field {
            Field::Real => Complex64::new(value.re, 0.0),
            Field::Complex => value,
        };
        Self { field, value }
    }

    pub fn one(field: Field) -> Self {
        Self::new(field, Complex64::new(1.0, 0.0))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }

    pub fn modulus(&self) -> f64 {
        self.value.norm()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.field, self.value.conj())
    }

    pub fn mul(&self, other: &Scalar) -> Self {
        Self::new(self.field, self.value * other.value)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.modulus() <= tol
    }

    pub fn to_pair(&self) -> [f64; 2] {
        [self.value.re, self.value.im]
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Field::Real => write!(f, "{}", self.value.re),
            Field::Complex => write!(f, "{}{:+}i", self.value.re, self.value.im),
        }
    }
}
