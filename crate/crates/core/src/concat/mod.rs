//! The category **Con**: finite-dimensional Hilbert spaces and linear
//! contractions.
//!
//! Objects are [`HObj`] (a field and a dimension). Arbitrary bounded maps are
//! [`Mor`]; the morphisms of **Con** are [`ConMor`], maps whose operator norm
//! is at most one. Composition, dagger, `⊗` and `⊕` are closed on `ConMor`
//! because `‖g∘f‖ ≤ ‖g‖‖f‖`, `‖f†‖ = ‖f‖`, `‖f⊗g‖ = ‖f‖‖g‖` and
//! `‖f⊕g‖ = max(‖f‖, ‖g‖)`; only externally supplied maps go through
//! admission.

mod convex;
mod limits;
mod positivity;
mod separator;
mod structure;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::{opnorm, Field, Matrix, MatrixJson, Scalar, TOL_CON, TOL_EQ};

pub use convex::{
    averaging_compression, compress_average, mixture, russo_dye, scalar_as_compression,
    Compression, RussoDye,
};
pub use limits::{
    cokernel, dagger_equalizer, dagger_kernel, equalizer_mediator, factor, factorization_residual,
    is_epi, projector, Factorization, FactorizationJson,
};
pub use positivity::{
    dagger_mono_extraction, positivity_witness, subobject_class, subobject_factor, subobject_leq,
};
pub use separator::separator_check;
pub use structure::{
    left_distributor, oplus_associator, oplus_braiding, oplus_left_unitor, oplus_right_unitor,
    right_distributor, tensor_associator, tensor_braiding, tensor_left_unitor, tensor_right_unitor,
};

/// A finite-dimensional Hilbert space, up to isomorphism: its field and
/// dimension. Dimension 0 is the zero object, dimension 1 the tensor unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HObj {
    pub field: Field,
    pub dim: usize,
}

impl HObj {
    pub fn new(field: Field, dim: usize) -> Self {
        Self { field, dim }
    }

    /// The tensor unit `I`.
    pub fn unit(field: Field) -> Self {
        Self::new(field, 1)
    }

    /// The zero object `0`.
    pub fn zero(field: Field) -> Self {
        Self::new(field, 0)
    }

    pub fn tensor(&self, other: &HObj) -> HObj {
        HObj::new(self.field, self.dim * other.dim)
    }

    pub fn oplus(&self, other: &HObj) -> HObj {
        HObj::new(self.field, self.dim + other.dim)
    }

    /// `H ⊕ … ⊕ H` with `n` summands.
    pub fn power(&self, n: usize) -> HObj {
        HObj::new(self.field, self.dim * n)
    }
}

impl fmt::Display for HObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.field, self.dim)
    }
}

/// A bounded linear map `dom → cod`, stored as a `cod.dim × dom.dim` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mor {
    dom: HObj,
    cod: HObj,
    mat: Matrix,
}

impl Mor {
    pub fn new(dom: HObj, cod: HObj, mat: Matrix) -> Result<Self> {
        if dom.field != cod.field {
            return Err(Error::FieldMismatch {
                expected: dom.field,
                found: cod.field,
            });
        }
        if mat.field() != dom.field {
            return Err(Error::FieldMismatch {
                expected: dom.field,
                found: mat.field(),
            });
        }
        if mat.shape() != (cod.dim, dom.dim) {
            return Err(Error::ShapeMismatch(format!(
                "matrix is {}x{} but morphism is {} -> {}",
                mat.rows(),
                mat.cols(),
                dom,
                cod
            )));
        }
        Ok(Self { dom, cod, mat })
    }

    /// Reads domain and codomain off the matrix shape.
    pub fn from_matrix(mat: Matrix) -> Self {
        let field = mat.field();
        Self {
            dom: HObj::new(field, mat.cols()),
            cod: HObj::new(field, mat.rows()),
            mat,
        }
    }

    pub fn dom(&self) -> HObj {
        self.dom
    }

    pub fn cod(&self) -> HObj {
        self.cod
    }

    pub fn mat(&self) -> &Matrix {
        &self.mat
    }

    pub fn field(&self) -> Field {
        self.dom.field
    }

    pub fn norm(&self) -> f64 {
        opnorm(&self.mat)
    }

    pub fn compose(&self, f: &Mor) -> Result<Mor> {
        check_composable(f.cod, self.dom)?;
        Ok(Mor {
            dom: f.dom,
            cod: self.cod,
            mat: self.mat.matmul(&f.mat),
        })
    }

    pub fn dagger(&self) -> Mor {
        Mor {
            dom: self.cod,
            cod: self.dom,
            mat: self.mat.adjoint(),
        }
    }

    /// `z • self`.
    pub fn scaled(&self, z: &Scalar) -> Result<Mor> {
        check_field(self.field(), z.field())?;
        Ok(Mor {
            dom: self.dom,
            cod: self.cod,
            mat: self.mat.scale(z.value()),
        })
    }

    pub fn add(&self, other: &Mor) -> Result<Mor> {
        check_parallel(self, other)?;
        Ok(Mor {
            dom: self.dom,
            cod: self.cod,
            mat: &self.mat + &other.mat,
        })
    }

    /// Equality up to `tol · max(1, ‖self‖, ‖other‖)`.
    pub fn approx_eq(&self, other: &Mor, tol: f64) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.rel_dist(other) <= tol
    }

    /// `‖self − other‖ / max(1, ‖self‖, ‖other‖)`. Panics on shape mismatch.
    pub fn rel_dist(&self, other: &Mor) -> f64 {
        let scale = 1f64.max(self.norm()).max(other.norm());
        self.mat.dist(&other.mat) / scale
    }

    /// `‖self − other‖` in operator norm. Panics on shape mismatch.
    pub fn dist(&self, other: &Mor) -> f64 {
        self.mat.dist(&other.mat)
    }

    /// `‖self†∘self − id‖`.
    pub fn isometry_residual(&self) -> f64 {
        self.mat.isometry_residual()
    }

    /// `max(‖f†f − id‖, ‖ff† − id‖)`, or infinity when not square.
    pub fn unitary_residual(&self) -> f64 {
        if self.dom.dim != self.cod.dim {
            return f64::INFINITY;
        }
        self.mat
            .isometry_residual()
            .max(self.mat.adjoint().isometry_residual())
    }

    pub fn to_json(&self) -> MorJson {
        let m = self.mat.to_json();
        MorJson {
            field: m.field,
            rows: m.rows,
            cols: m.cols,
            entries: m.entries,
            dom: self.dom.dim,
            cod: self.cod.dim,
        }
    }

    pub fn from_json(j: &MorJson) -> Result<Mor> {
        if j.dom != j.cols || j.cod != j.rows {
            return Err(Error::Parse(format!(
                "morphism {} -> {} does not match a {}x{} matrix",
                j.dom, j.cod, j.rows, j.cols
            )));
        }
        let mat = Matrix::from_json(&MatrixJson {
            field: j.field,
            rows: j.rows,
            cols: j.cols,
            entries: j.entries.clone(),
        })?;
        Ok(Mor::from_matrix(mat))
    }
}

/// Wire form of a morphism: the matrix fields plus `dom` and `cod`
/// dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorJson {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
    pub dom: usize,
    pub cod: usize,
}

/// A morphism of **Con**: a linear map with operator norm at most one.
#[derive(Debug, Clone, PartialEq)]
pub struct ConMor(Mor);

impl ConMor {
    /// Admits `mor` into **Con**. Norms in `(1, 1 + TOL_CON]` are scaled back
    /// to exactly 1; larger norms are rejected.
    pub fn new(mor: Mor) -> Result<Self> {
        let norm = mor.norm();
        if !norm.is_finite() {
            return Err(Error::NotContraction { norm });
        }
        if norm <= 1.0 {
            Ok(ConMor(mor))
        } else if norm <= 1.0 + TOL_CON {
            let mat = mor.mat.scale_real(1.0 / norm);
            Ok(ConMor(Mor { mat, ..mor }))
        } else {
            Err(Error::NotContraction { norm })
        }
    }

    pub fn from_matrix(mat: Matrix) -> Result<Self> {
        Self::new(Mor::from_matrix(mat))
    }

    /// Wraps without checking the norm. Callers guarantee `‖mor‖ ≤ 1`.
    pub(crate) fn new_unchecked(mor: Mor) -> Self {
        ConMor(mor)
    }

    pub(crate) fn from_matrix_unchecked(mat: Matrix) -> Self {
        ConMor(Mor::from_matrix(mat))
    }

    pub fn id(obj: HObj) -> Self {
        ConMor(Mor {
            dom: obj,
            cod: obj,
            mat: Matrix::identity(obj.field, obj.dim),
        })
    }

    /// The zero map `H → K`, the unique map factoring through `0`.
    pub fn zero(dom: HObj, cod: HObj) -> Self {
        ConMor(Mor {
            dom,
            cod,
            mat: Matrix::zeros(dom.field, cod.dim, dom.dim),
        })
    }

    /// `inl: H → H ⊕ K`, `x ↦ (x, 0)`.
    pub fn inl(h: HObj, k: HObj) -> Self {
        let sum = h.oplus(&k);
        let mat = Matrix::from_fn(h.field, sum.dim, h.dim, |i, j| unit_entry(i == j));
        ConMor(Mor {
            dom: h,
            cod: sum,
            mat,
        })
    }

    /// `inr: K → H ⊕ K`, `y ↦ (0, y)`.
    pub fn inr(h: HObj, k: HObj) -> Self {
        let sum = h.oplus(&k);
        let mat = Matrix::from_fn(h.field, sum.dim, k.dim, |i, j| unit_entry(i == h.dim + j));
        ConMor(Mor {
            dom: k,
            cod: sum,
            mat,
        })
    }

    /// A scalar `I → I` as a morphism. Rejected when `|z| > 1 + TOL_CON`.
    pub fn scalar(z: &Scalar) -> Result<Self> {
        Self::new(Mor::from_matrix(Matrix::scalar(z.field(), z.value())))
    }

    pub fn mor(&self) -> &Mor {
        &self.0
    }

    pub fn into_mor(self) -> Mor {
        self.0
    }

    pub fn mat(&self) -> &Matrix {
        &self.0.mat
    }

    pub fn dom(&self) -> HObj {
        self.0.dom
    }

    pub fn cod(&self) -> HObj {
        self.0.cod
    }

    pub fn field(&self) -> Field {
        self.0.field()
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ConMor) -> Result<ConMor> {
        Ok(ConMor(self.0.compose(&f.0)?))
    }

    pub fn dagger(&self) -> ConMor {
        ConMor(self.0.dagger())
    }

    /// Kronecker product, left factor major.
    pub fn tensor(&self, g: &ConMor) -> Result<ConMor> {
        check_field(self.field(), g.field())?;
        Ok(ConMor(Mor {
            dom: self.dom().tensor(&g.dom()),
            cod: self.cod().tensor(&g.cod()),
            mat: self.mat().kron(g.mat()),
        }))
    }

    /// Block-diagonal sum.
    pub fn oplus(&self, g: &ConMor) -> Result<ConMor> {
        check_field(self.field(), g.field())?;
        Ok(ConMor(Mor {
            dom: self.dom().oplus(&g.dom()),
            cod: self.cod().oplus(&g.cod()),
            mat: self.mat().block_diag(g.mat()),
        }))
    }

    /// `z • self`, admitted back into **Con** when `|z| ≤ 1`.
    pub fn scaled(&self, z: &Scalar) -> Result<ConMor> {
        let m = scalar_act(z, self)?;
        if z.modulus() <= 1.0 {
            Ok(ConMor(m))
        } else {
            ConMor::new(m)
        }
    }

    pub fn approx_eq(&self, other: &ConMor, tol: f64) -> bool {
        self.0.approx_eq(&other.0, tol)
    }

    pub fn is_isometry(&self, tol: f64) -> bool {
        self.0.isometry_residual() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.0.unitary_residual() <= tol
    }
}

impl From<ConMor> for Mor {
    fn from(c: ConMor) -> Mor {
        c.0
    }
}

impl TryFrom<Mor> for ConMor {
    type Error = Error;
    fn try_from(m: Mor) -> Result<ConMor> {
        ConMor::new(m)
    }
}

/// `z • f`: scaling through the unitors `H ≅ I ⊗ H`. The result is a plain
/// bounded map; it lies in **Con** exactly when `|z|·‖f‖ ≤ 1`.
pub fn scalar_act(z: &Scalar, f: &ConMor) -> Result<Mor> {
    f.mor().scaled(z)
}

/// Direct sum of a nonempty list of morphisms.
pub fn oplus_all(parts: &[ConMor]) -> Result<ConMor> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::ShapeMismatch("empty direct sum".into()))?;
    rest.iter().try_fold(first.clone(), |acc, p| acc.oplus(p))
}

/// Whether `f` and `g` agree up to `TOL_EQ` relative to their norms.
pub fn mor_eq(f: &Mor, g: &Mor) -> bool {
    f.approx_eq(g, TOL_EQ)
}

pub(crate) fn check_field(expected: Field, found: Field) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::FieldMismatch { expected, found })
    }
}

pub(crate) fn check_composable(f_cod: HObj, g_dom: HObj) -> Result<()> {
    check_field(f_cod.field, g_dom.field)?;
    if f_cod != g_dom {
        return Err(Error::ShapeMismatch(format!(
            "cannot compose: codomain {f_cod} vs domain {g_dom}"
        )));
    }
    Ok(())
}

pub(crate) fn check_parallel(f: &Mor, g: &Mor) -> Result<()> {
    check_field(f.field(), g.field())?;
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::ShapeMismatch(format!(
            "not parallel: {} -> {} vs {} -> {}",
            f.dom(),
            f.cod(),
            g.dom(),
            g.cod()
        )));
    }
    Ok(())
}

fn unit_entry(on: bool) -> Complex64 {
    if on {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: usize, cols: usize, e: &[f64]) -> ConMor {
        ConMor::from_matrix(Matrix::from_real(rows, cols, e)).unwrap()
    }

    #[test]
    fn identity_is_a_unit_for_composition() {
        let f = real(2, 3, &[0.1, 0.2, 0.0, -0.3, 0.1, 0.4]);
        let g = ConMor::id(f.cod()).compose(&f).unwrap();
        assert_eq!(g, f);
        let h = f.compose(&ConMor::id(f.dom())).unwrap();
        assert_eq!(h, f);
    }

    #[test]
    fn scalar_composition() {
        let half = ConMor::scalar(&Scalar::real(0.5)).unwrap();
        let q = half.compose(&half).unwrap();
        assert_eq!(q.mat().get(0, 0).re, 0.25);
    }

    #[test]
    fn compose_rejects_mismatched_shapes() {
        let f = real(2, 1, &[0.5, 0.5]);
        let g = real(3, 3, &[0.0; 9]);
        assert!(matches!(g.compose(&f), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn dagger_of_real_matrix_is_transpose() {
        let s = 1.0 / 6.0;
        let f = real(2, 2, &[s, 2.0 * s, 3.0 * s, 4.0 * s]);
        let d = f.dagger();
        assert_eq!(d.mat().get(0, 1).re, 3.0 * s);
        assert_eq!(d.mat().get(1, 0).re, 2.0 * s);
        assert_eq!(d.dagger(), f);
    }

    #[test]
    fn dagger_of_complex_row() {
        let f = ConMor::from_matrix(Matrix::new(
            Field::Complex,
            1,
            2,
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
        ))
        .unwrap();
        let d = f.dagger();
        assert_eq!(d.mat().shape(), (2, 1));
        assert_eq!(d.mat().get(1, 0), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn tensor_and_oplus_of_scalars() {
        let a = ConMor::scalar(&Scalar::real(0.6)).unwrap();
        let b = ConMor::scalar(&Scalar::real(0.8)).unwrap();
        let s = a.oplus(&b).unwrap();
        assert!((s.norm() - 0.8).abs() < 1e-15);
        let t = a.tensor(&b).unwrap();
        assert!((t.mat().get(0, 0).re - 0.48).abs() < 1e-15);
        let u = a.tensor(&ConMor::id(HObj::unit(Field::Real))).unwrap();
        assert_eq!(u, a);
    }

    #[test]
    fn tensor_rejects_mixed_fields() {
        let a = ConMor::id(HObj::unit(Field::Real));
        let b = ConMor::id(HObj::unit(Field::Complex));
        assert!(matches!(a.tensor(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn injections() {
        let i = HObj::unit(Field::Real);
        let l = ConMor::inl(i, i);
        assert_eq!(l.mat().get(0, 0).re, 1.0);
        assert_eq!(l.mat().get(1, 0).re, 0.0);
        let r = ConMor::inr(i, i);
        let rr = r.dagger().compose(&r).unwrap();
        assert!(rr.approx_eq(&ConMor::id(i), 0.0));
        let rl = r.dagger().compose(&l).unwrap();
        assert_eq!(rl.mat().max_abs(), 0.0);
    }

    #[test]
    fn admission_rescales_within_slack() {
        let m = Mor::from_matrix(Matrix::from_real(1, 1, &[1.0 + 5e-10]));
        let c = ConMor::new(m).unwrap();
        assert!(c.norm() <= 1.0);
        let bad = Mor::from_matrix(Matrix::from_real(1, 1, &[1.5]));
        assert!(matches!(
            ConMor::new(bad),
            Err(Error::NotContraction { .. })
        ));
    }

    #[test]
    fn scalar_action_laws() {
        let f = real(2, 2, &[0.3, 0.1, -0.2, 0.4]);
        let g = real(1, 2, &[0.5, -0.5]);
        let z = Scalar::real(0.7);
        let w = Scalar::real(-0.4);
        let one = scalar_act(&Scalar::one(Field::Real), &f).unwrap();
        assert_eq!(&one, f.mor());
        let zw = scalar_act(&z, &f.scaled(&w).unwrap()).unwrap();
        let zw2 = scalar_act(&z.mul(&w), &f).unwrap();
        assert!(mor_eq(&zw, &zw2));
        let gf = g.compose(&f).unwrap();
        let a = scalar_act(&z, &gf).unwrap();
        let b = scalar_act(&z, &g).unwrap().compose(f.mor()).unwrap();
        let c = g.mor().compose(&scalar_act(&z, &f).unwrap()).unwrap();
        assert!(mor_eq(&a, &b));
        assert!(mor_eq(&a, &c));
    }

    #[test]
    fn mor_json_checks_dimensions() {
        let f = real(2, 1, &[0.6, 0.8]);
        let mut j = f.mor().to_json();
        assert_eq!(Mor::from_json(&j).unwrap(), *f.mor());
        j.dom = 2;
        assert!(Mor::from_json(&j).is_err());
    }
}
