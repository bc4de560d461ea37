//! Mixtures, compressions and averages of unitaries.

use num_complex::Complex64;

use super::{check_field, oplus_all, ConMor, HObj, Mor};
use crate::error::{Error, Result};
use crate::numkernel::{svd, Field, Matrix, TOL_CON, TOL_EQ, TOL_ORTHO};

/// The mixture `s = (½, ½): I → I ⊕ I`.
pub fn mixture(field: Field) -> ConMor {
    ConMor::from_matrix_unchecked(Matrix::from_reals(field, 2, 1, &[0.5, 0.5]))
}

/// A real scalar `z ∈ [0,1]` realized as a compression of an isometry.
#[derive(Debug, Clone, PartialEq)]
pub struct Compression {
    /// `v = (√z, √(1−z)): I → I ⊕ I`.
    pub v: ConMor,
    /// `v† ∘ (1 ⊕ 0) ∘ v`.
    pub value: f64,
    /// `|value − z|`.
    pub residual: f64,
}

pub fn scalar_as_compression(field: Field, z: f64) -> Result<Compression> {
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::OutOfDomain(format!(
            "compression needs z in [0,1], got {z}"
        )));
    }
    let v = ConMor::from_matrix_unchecked(Matrix::from_reals(
        field,
        2,
        1,
        &[z.sqrt(), (1.0 - z).sqrt()],
    ));
    let i = HObj::unit(field);
    let proj = ConMor::id(i).oplus(&ConMor::zero(i, i))?;
    let c = v.dagger().compose(&proj)?.compose(&v)?;
    let value = c.mat().get(0, 0).re;
    Ok(Compression {
        v,
        value,
        residual: (value - z).abs(),
    })
}

/// Two unitaries averaging to a square complex contraction.
#[derive(Debug, Clone, PartialEq)]
pub struct RussoDye {
    pub u1: ConMor,
    pub u2: ConMor,
}

impl RussoDye {
    /// `‖t − (u1 + u2)/2‖`.
    pub fn residual(&self, t: &Mor) -> f64 {
        let avg = (self.u1.mat() + self.u2.mat()).scale_real(0.5);
        avg.dist(t.mat())
    }
}

/// Writes a square complex contraction as the average of two unitaries.
///
/// With `t = W·P` (`W` a unitary completion of the polar factor,
/// `P = (t†t)^{1/2}`) and `S = (I − P²)^{1/2}`, the unitaries are
/// `W·(P ± iS)`. Both come out of one SVD `t = U Σ V†` as
/// `U·diag(σ ± i√(1−σ²))·V†`.
pub fn russo_dye(t: &Mor) -> Result<RussoDye> {
    if t.field() != Field::Complex {
        return Err(Error::OutOfDomain(
            "averages of two unitaries are only constructed over the complex field".into(),
        ));
    }
    if t.dom().dim != t.cod().dim {
        return Err(Error::ShapeMismatch(format!(
            "unitary averages need a square map, got {} -> {}",
            t.dom(),
            t.cod()
        )));
    }
    let dec = svd(t.mat());
    if let Some(&top) = dec.sigma.first() {
        if top > 1.0 + TOL_CON {
            return Err(Error::NotContraction { norm: top });
        }
    }
    let field = Field::Complex;
    let sigma: Vec<f64> = dec.sigma.iter().map(|s| s.min(1.0)).collect();
    let w = dec.u.matmul(&dec.v.adjoint());
    let p = dec
        .v
        .matmul(&Matrix::diag_real(field, &sigma))
        .matmul(&dec.v.adjoint());
    let comp: Vec<f64> = sigma
        .iter()
        .map(|s| (1.0 - s * s).max(0.0).sqrt())
        .collect();
    let s = dec
        .v
        .matmul(&Matrix::diag_real(field, &comp))
        .matmul(&dec.v.adjoint());
    let is = s.scale(Complex64::new(0.0, 1.0));
    let u1 = w.matmul(&(&p + &is));
    let u2 = w.matmul(&(&p - &is));
    let out = RussoDye {
        u1: ConMor::new_unchecked(Mor::new(t.dom(), t.cod(), u1)?),
        u2: ConMor::new_unchecked(Mor::new(t.dom(), t.cod(), u2)?),
    };
    for u in [&out.u1, &out.u2] {
        let r = u.mor().unitary_residual();
        if r > TOL_ORTHO {
            return Err(Error::Verification {
                what: "Russo-Dye factor is not unitary".into(),
                residual: r,
            });
        }
    }
    let r = out.residual(t);
    if r > TOL_EQ {
        return Err(Error::Verification {
            what: "unitaries do not average to t".into(),
            residual: r,
        });
    }
    Ok(out)
}

/// The isometry `w: H → H^{⊕n}`, `x ↦ (x, …, x)/√n`, which satisfies
/// `w† ∘ (t₁ ⊕ … ⊕ tₙ) ∘ w = (t₁ + … + tₙ)/n`.
pub fn averaging_compression(n: usize, h: HObj) -> Result<ConMor> {
    if n == 0 {
        return Err(Error::OutOfDomain("averaging needs n ≥ 1".into()));
    }
    let c = 1.0 / (n as f64).sqrt();
    let d = h.dim;
    let mat = Matrix::from_fn(h.field, n * d, d, |i, j| {
        if i % d.max(1) == j {
            Complex64::new(c, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(ConMor::new_unchecked(Mor::new(h, h.power(n), mat)?))
}

/// `w† ∘ (t₁ ⊕ … ⊕ tₙ) ∘ w` for the averaging isometry `w`.
pub fn compress_average(parts: &[ConMor]) -> Result<ConMor> {
    let h = parts
        .first()
        .ok_or_else(|| Error::OutOfDomain("nothing to average".into()))?
        .dom();
    for p in parts {
        check_field(h.field, p.field())?;
        if p.dom() != h || p.cod() != h {
            return Err(Error::ShapeMismatch(
                "averaged maps must be endomorphisms of one object".into(),
            ));
        }
    }
    let w = averaging_compression(parts.len(), h)?;
    w.dagger().compose(&oplus_all(parts)?)?.compose(&w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mixture_components() {
        let s = mixture(Field::Real);
        let i = HObj::unit(Field::Real);
        let l = ConMor::inl(i, i).dagger().compose(&s).unwrap();
        assert_eq!(l.mat().get(0, 0).re, 0.5);
        assert!((s.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let ss = s.dagger().compose(&s).unwrap();
        assert_eq!(ss.mat().get(0, 0).re, 0.5);
    }

    #[test]
    fn compression_endpoints_and_quarter() {
        let z0 = scalar_as_compression(Field::Real, 0.0).unwrap();
        assert_eq!(z0.v.mat().get(1, 0).re, 1.0);
        assert_eq!(z0.value, 0.0);
        let z1 = scalar_as_compression(Field::Real, 1.0).unwrap();
        assert_eq!(z1.v.mat().get(0, 0).re, 1.0);
        assert_eq!(z1.value, 1.0);
        let q = scalar_as_compression(Field::Complex, 0.25).unwrap();
        assert_eq!(q.v.mat().get(0, 0).re, 0.5);
        assert!((q.v.mat().get(1, 0).re - 0.75f64.sqrt()).abs() < 1e-15);
        assert!(q.residual < 1e-15);
        assert!(scalar_as_compression(Field::Real, 1.2).is_err());
        assert!(scalar_as_compression(Field::Real, -0.1).is_err());
    }

    #[test]
    fn russo_dye_of_zero() {
        let t = Mor::from_matrix(Matrix::zeros(Field::Complex, 1, 1));
        let rd = russo_dye(&t).unwrap();
        assert!((rd.u1.mat().get(0, 0) - c(0.0, 1.0)).norm() < 1e-15);
        assert!((rd.u2.mat().get(0, 0) - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn russo_dye_of_half() {
        let t = Mor::from_matrix(Matrix::scalar(Field::Complex, c(0.5, 0.0)));
        let rd = russo_dye(&t).unwrap();
        let s = 0.75f64.sqrt();
        assert!((rd.u1.mat().get(0, 0) - c(0.5, s)).norm() < 1e-15);
        assert!((rd.u2.mat().get(0, 0) - c(0.5, -s)).norm() < 1e-15);
        assert!((rd.u1.mat().get(0, 0).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn russo_dye_rejects_real_and_large() {
        let real = Mor::from_matrix(Matrix::from_real(1, 1, &[0.5]));
        assert!(russo_dye(&real).is_err());
        let big = Mor::from_matrix(Matrix::scalar(Field::Complex, c(1.5, 0.0)));
        assert!(matches!(russo_dye(&big), Err(Error::NotContraction { .. })));
        let rect = Mor::from_matrix(Matrix::zeros(Field::Complex, 2, 1));
        assert!(russo_dye(&rect).is_err());
    }

    #[test]
    fn averaging_with_one_summand_is_identity() {
        let h = HObj::new(Field::Real, 3);
        let w = averaging_compression(1, h).unwrap();
        assert_eq!(*w.mat(), Matrix::identity(Field::Real, 3));
        assert!(averaging_compression(0, h).is_err());
    }

    #[test]
    fn averaging_two_scalars() {
        let h = HObj::unit(Field::Real);
        let w = averaging_compression(2, h).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((w.mat().get(0, 0).re - r).abs() < 1e-15);
        assert!((w.mat().get(1, 0).re - r).abs() < 1e-15);
        let a = ConMor::scalar(&crate::numkernel::Scalar::real(0.2)).unwrap();
        let b = ConMor::scalar(&crate::numkernel::Scalar::real(-0.6)).unwrap();
        let avg = compress_average(&[a, b]).unwrap();
        assert!((avg.mat().get(0, 0).re + 0.2).abs() < 1e-15);
    }

    #[test]
    fn averaging_isometry_on_zero_object() {
        let w = averaging_compression(3, HObj::zero(Field::Real)).unwrap();
        assert_eq!(w.mat().shape(), (0, 0));
    }
}
