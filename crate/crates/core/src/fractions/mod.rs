//! Formal fractions `[t/z]` of a contraction `t` by a nonzero scalar `z`.
//!
//! `[t/z] ~ [t'/z']` iff `z'•t = z•t'`. Composition multiplies numerators and
//! denominators, and [`to_hilb`] / [`from_hilb`] identify the resulting
//! category with bounded linear maps via `[t/z] ↦ z⁻¹t`.

mod limits;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::concat::{check_field, scalar_act, ConMor, HObj, Mor, MorJson};
use crate::error::{Error, Result};
use crate::numkernel::{Field, Matrix, Scalar, TOL_CON, TOL_EQ, TOL_RANK};

pub use limits::{
    frac_equalizer, frac_kernel_completion, frac_pair, frac_projections, simplicity_witness,
    FracEqualizer, KernelCompletion, SimplicityKind, SimplicityWitness,
};

/// A morphism `[num/den]` of the localisation.
#[derive(Debug, Clone, PartialEq)]
pub struct Fraction {
    num: ConMor,
    den: Scalar,
}

impl Fraction {
    /// Rejects denominators with modulus `≤ TOL_RANK` or above `1 + TOL_CON`.
    pub fn new(num: ConMor, den: Scalar) -> Result<Self> {
        check_field(num.field(), den.field())?;
        let m = den.modulus();
        if !(m > TOL_RANK) {
            return Err(Error::ZeroDenominator { modulus: m });
        }
        if m > 1.0 + TOL_CON {
            return Err(Error::NotContraction { norm: m });
        }
        Ok(Self { num, den })
    }

    /// The embedding `t ↦ [t/1]`.
    pub fn embed(num: ConMor) -> Self {
        let den = Scalar::one(num.field());
        Self { num, den }
    }

    pub fn id(obj: HObj) -> Self {
        Self::embed(ConMor::id(obj))
    }

    pub fn zero(dom: HObj, cod: HObj) -> Self {
        Self::embed(ConMor::zero(dom, cod))
    }

    /// `[id/z]`, the formal inverse of the scalar `z`.
    pub fn inverse_scalar(obj: HObj, z: Scalar) -> Result<Self> {
        Self::new(ConMor::id(obj), z)
    }

    pub fn num(&self) -> &ConMor {
        &self.num
    }

    pub fn den(&self) -> Scalar {
        self.den
    }

    pub fn dom(&self) -> HObj {
        self.num.dom()
    }

    pub fn cod(&self) -> HObj {
        self.num.cod()
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    /// Canonical representative with a real denominator in `(0, 1]`: the
    /// numerator absorbs the conjugate phase of the denominator.
    pub fn normalize(&self) -> Fraction {
        let z = self.den.value();
        let m = z.norm();
        let phase = Scalar::new(self.field(), (z / m).conj());
        let num = self
            .num
            .scaled(&phase)
            .expect("unit-modulus scaling of a contraction");
        Fraction {
            num,
            den: Scalar::new(self.field(), Complex64::new(m, 0.0)),
        }
    }

    pub fn compose(&self, f: &Fraction) -> Result<Fraction> {
        Ok(Fraction {
            num: self.num.compose(&f.num)?,
            den: self.den.mul(&f.den),
        })
    }

    pub fn dagger(&self) -> Fraction {
        Fraction {
            num: self.num.dagger(),
            den: self.den.conj(),
        }
    }

    pub fn tensor(&self, g: &Fraction) -> Result<Fraction> {
        Ok(Fraction {
            num: self.num.tensor(&g.num)?,
            den: self.den.mul(&g.den),
        })
    }

    /// `[t/z] ⊕ [t'/z'] = [z'•t ⊕ z•t' / z•z']`.
    pub fn oplus(&self, g: &Fraction) -> Result<Fraction> {
        check_field(self.field(), g.field())?;
        let l = self.num.scaled(&g.den)?;
        let r = g.num.scaled(&self.den)?;
        Ok(Fraction {
            num: l.oplus(&r)?,
            den: self.den.mul(&g.den),
        })
    }

    /// `[t/z] ~ [t'/z']` within [`TOL_EQ`].
    pub fn approx_eq(&self, other: &Fraction) -> Result<bool> {
        self.approx_eq_tol(other, TOL_EQ)
    }

    pub fn approx_eq_tol(&self, other: &Fraction, tol: f64) -> Result<bool> {
        Ok(self.eq_residual(other)? <= tol)
    }

    /// `‖z'•t − z•t'‖ / max(1, ‖z'•t‖, ‖z•t'‖)`.
    pub fn eq_residual(&self, other: &Fraction) -> Result<f64> {
        check_field(self.field(), other.field())?;
        if self.dom() != other.dom() || self.cod() != other.cod() {
            return Err(Error::ShapeMismatch(format!(
                "fractions are not parallel: {} -> {} vs {} -> {}",
                self.dom(),
                self.cod(),
                other.dom(),
                other.cod()
            )));
        }
        let a = scalar_act(&other.den, &self.num)?;
        let b = scalar_act(&self.den, &other.num)?;
        Ok(a.rel_dist(&b))
    }

    pub fn to_json(&self) -> FractionJson {
        FractionJson {
            num: self.num.mor().to_json(),
            den: self.den.to_pair(),
        }
    }

    pub fn from_json(j: &FractionJson) -> Result<Fraction> {
        let mor = Mor::from_json(&j.num)?;
        let field = mor.field();
        if field == Field::Real && j.den[1] != 0.0 {
            return Err(Error::Parse(
                "real fraction with complex denominator".into(),
            ));
        }
        let den = Scalar::new(field, Complex64::new(j.den[0], j.den[1]));
        Fraction::new(ConMor::new(mor)?, den)
    }
}

/// Wire form `{"num": Mor, "den": [re, im]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FractionJson {
    pub num: MorJson,
    pub den: [f64; 2],
}

pub fn frac_eq(a: &Fraction, b: &Fraction) -> Result<bool> {
    a.approx_eq(b)
}

pub fn frac_compose(g: &Fraction, f: &Fraction) -> Result<Fraction> {
    g.compose(f)
}

pub fn frac_dagger(f: &Fraction) -> Fraction {
    f.dagger()
}

pub fn frac_tensor(f: &Fraction, g: &Fraction) -> Result<Fraction> {
    f.tensor(g)
}

pub fn frac_oplus(f: &Fraction, g: &Fraction) -> Result<Fraction> {
    f.oplus(g)
}

/// `[t/z] ↦ z⁻¹t`.
pub fn to_hilb(f: &Fraction) -> Mor {
    let inv = Complex64::new(1.0, 0.0) / f.den.value();
    let mat: Matrix = f.num.mat().scale(inv);
    Mor::new(f.dom(), f.cod(), mat).expect("scaling preserves shape")
}

/// `[t/1]` for contractions, `[t/‖t‖ / 1/‖t‖]` otherwise.
pub fn from_hilb(t: &Mor) -> Result<Fraction> {
    let n = t.norm();
    if !n.is_finite() {
        return Err(Error::NotContraction { norm: n });
    }
    if n <= 1.0 {
        return Ok(Fraction::embed(ConMor::new(t.clone())?));
    }
    let num = ConMor::new(t.scaled(&Scalar::new(t.field(), Complex64::new(1.0 / n, 0.0)))?)?;
    Fraction::new(num, Scalar::new(t.field(), Complex64::new(1.0 / n, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(x: f64) -> Scalar {
        Scalar::real(x)
    }

    fn rmat(rows: usize, cols: usize, e: &[f64]) -> ConMor {
        ConMor::from_matrix(Matrix::from_real(rows, cols, e)).unwrap()
    }

    fn scalar_frac(t: f64, z: f64) -> Fraction {
        Fraction::new(ConMor::scalar(&rs(t)).unwrap(), rs(z)).unwrap()
    }

    #[test]
    fn equivalent_scalar_representatives() {
        let h = HObj::new(Field::Real, 2);
        let a = Fraction::new(ConMor::id(h).scaled(&rs(0.3)).unwrap(), rs(0.6)).unwrap();
        let b = Fraction::new(ConMor::id(h).scaled(&rs(0.5)).unwrap(), rs(1.0)).unwrap();
        assert!(frac_eq(&a, &b).unwrap());
        assert!(frac_eq(&a, &a).unwrap());
        let c = Fraction::new(ConMor::id(h).scaled(&rs(0.5)).unwrap(), rs(0.6)).unwrap();
        assert!(!frac_eq(&a, &c).unwrap());
    }

    #[test]
    fn zero_denominator_rejected() {
        let f = ConMor::id(HObj::unit(Field::Real));
        assert!(matches!(
            Fraction::new(f.clone(), rs(0.0)),
            Err(Error::ZeroDenominator { .. })
        ));
        assert!(Fraction::new(f, rs(1e-12)).is_err());
    }

    #[test]
    fn composition_and_identity() {
        let h = scalar_frac(0.5, 1.0);
        let q = frac_compose(&h, &h).unwrap();
        assert_eq!(q.num().mat().get(0, 0).re, 0.25);
        assert_eq!(q.den().re(), 1.0);
        let t = Fraction::new(rmat(2, 1, &[0.6, 0.0]), rs(0.3)).unwrap();
        let l = frac_compose(&t, &Fraction::id(t.dom())).unwrap();
        let r = frac_compose(&Fraction::id(t.cod()), &t).unwrap();
        assert!(frac_eq(&l, &t).unwrap() && frac_eq(&r, &t).unwrap());
    }

    #[test]
    fn oplus_of_scalar_fractions() {
        let a = scalar_frac(0.5, 1.0);
        let b = scalar_frac(0.3, 0.6);
        let s = frac_oplus(&a, &b).unwrap();
        assert!((s.num().mat().get(0, 0).re - 0.3).abs() < 1e-15);
        assert!((s.num().mat().get(1, 1).re - 0.3).abs() < 1e-15);
        assert!((s.den().re() - 0.6).abs() < 1e-15);
        let i2 = HObj::new(Field::Real, 2);
        let half = Fraction::embed(ConMor::id(i2).scaled(&rs(0.5)).unwrap());
        assert!(frac_eq(&s, &half).unwrap());
    }

    #[test]
    fn dagger_of_embedded_map() {
        let t = rmat(1, 2, &[0.1, 0.7]);
        let f = Fraction::embed(t.clone());
        assert_eq!(frac_dagger(&f), Fraction::embed(t.dagger()));
        let c = Fraction::new(
            ConMor::scalar(&Scalar::complex(0.0, 0.5)).unwrap(),
            Scalar::complex(0.6, 0.0),
        )
        .unwrap();
        assert_eq!(
            to_hilb(&c.dagger()).mat().get(0, 0),
            Complex64::new(0.0, -0.5 / 0.6)
        );
    }

    #[test]
    fn to_hilb_divides() {
        let h = HObj::new(Field::Real, 2);
        let f = Fraction::new(ConMor::id(h).scaled(&rs(0.5)).unwrap(), rs(0.25)).unwrap();
        let m = to_hilb(&f);
        assert_eq!(*m.mat(), Matrix::identity(Field::Real, 2).scale_real(2.0));
        let t = rmat(1, 1, &[0.4]);
        assert_eq!(to_hilb(&Fraction::embed(t.clone())), *t.mor());
    }

    #[test]
    fn from_hilb_fullness() {
        let two = Mor::from_matrix(Matrix::from_real(1, 1, &[2.0]));
        let f = from_hilb(&two).unwrap();
        assert!((f.num().mat().get(0, 0).re - 1.0).abs() < 1e-15);
        assert!((f.den().re() - 0.5).abs() < 1e-15);
        assert!(to_hilb(&f).approx_eq(&two, 1e-15));
        let c = Mor::from_matrix(Matrix::from_real(1, 2, &[0.3, 0.4]));
        assert_eq!(
            from_hilb(&c).unwrap(),
            Fraction::embed(ConMor::new(c).unwrap())
        );
    }

    #[test]
    fn normalize_makes_denominator_positive() {
        let f = Fraction::new(
            ConMor::scalar(&Scalar::complex(0.3, 0.1)).unwrap(),
            Scalar::complex(0.0, -0.5),
        )
        .unwrap();
        let n = f.normalize();
        assert_eq!(n.den().im(), 0.0);
        assert!((n.den().re() - 0.5).abs() < 1e-15);
        assert!(frac_eq(&f, &n).unwrap());
        let g = scalar_frac(0.2, -0.4).normalize();
        assert!((g.num().mat().get(0, 0).re + 0.2).abs() < 1e-15);
    }

    #[test]
    fn scalar_fractions_invert() {
        let i = HObj::unit(Field::Real);
        let z = rs(0.3);
        let inv = Fraction::inverse_scalar(i, z).unwrap();
        let zz = Fraction::embed(ConMor::scalar(&z).unwrap());
        assert!(frac_eq(&frac_compose(&inv, &zz).unwrap(), &Fraction::id(i)).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let f = Fraction::new(
            ConMor::scalar(&Scalar::complex(0.3, 0.1)).unwrap(),
            Scalar::complex(0.0, -0.5),
        )
        .unwrap();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        assert!(j.starts_with("{\"num\":"));
        let back: FractionJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Fraction::from_json(&back).unwrap(), f);
    }
}
