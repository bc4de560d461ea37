//! Equalisers, kernels, simplicity of the unit and pairing of fractions.

use serde::{Deserialize, Serialize};

use super::Fraction;
use crate::concat::{
    cokernel, dagger_equalizer, mixture, right_distributor, tensor_left_unitor, ConMor, HObj,
};
use crate::error::{Error, Result};
use crate::numkernel::{Scalar, TOL_EQ, TOL_ORTHO, TOL_RANK};

/// A dagger equaliser `[e/1]` of two parallel fractions.
#[derive(Debug, Clone, PartialEq)]
pub struct FracEqualizer {
    f: Fraction,
    g: Fraction,
    e: ConMor,
}

impl FracEqualizer {
    /// The equalising fraction `[e/1]`.
    pub fn fraction(&self) -> Fraction {
        Fraction::embed(self.e.clone())
    }

    pub fn inclusion(&self) -> &ConMor {
        &self.e
    }

    /// For a cone `[e'/w]` with `f∘[e'/w] ~ g∘[e'/w]`, the factorisation
    /// `[m / w•w]` where `m` is the unique map with `w•e' = e∘m`.
    pub fn mediate(&self, cone: &Fraction) -> Result<Fraction> {
        let fc = self.f.compose(cone)?;
        let gc = self.g.compose(cone)?;
        let r = fc.eq_residual(&gc)?;
        if r > TOL_EQ {
            return Err(Error::Verification {
                what: "cone does not equalise".into(),
                residual: r,
            });
        }
        let w = cone.den();
        let we = cone.num().scaled(&w)?;
        let m = self.e.dagger().compose(&we)?;
        let back = self.e.compose(&m)?;
        let r = back.mor().rel_dist(we.mor());
        if r > TOL_EQ {
            return Err(Error::Verification {
                what: "cone does not factor through the equaliser".into(),
                residual: r,
            });
        }
        Fraction::new(m, w.mul(&w))
    }
}

/// `e` is the dagger equaliser of `z'•t` and `z•t'` for `f = [t/z]`,
/// `g = [t'/z']`.
pub fn frac_equalizer(f: &Fraction, g: &Fraction) -> Result<FracEqualizer> {
    f.eq_residual(g)?;
    let a = f.num().scaled(&g.den())?;
    let b = g.num().scaled(&f.den())?;
    let e = dagger_equalizer(&a, &b)?;
    Ok(FracEqualizer {
        f: f.clone(),
        g: g.clone(),
        e,
    })
}

/// An isometry `t` exhibited as the kernel of `[s/1]` with `s` its cokernel.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCompletion {
    t: ConMor,
    s: Fraction,
}

impl KernelCompletion {
    pub fn s(&self) -> &Fraction {
        &self.s
    }

    pub fn kernel(&self) -> Fraction {
        Fraction::embed(self.t.clone())
    }

    /// For a cone `[t'/z']` with `[s/1]∘[t'/z'] ~ 0`, returns `[m/z']` with
    /// `t∘m = t'`.
    pub fn mediate(&self, cone: &Fraction) -> Result<Fraction> {
        let sc = self.s.compose(cone)?;
        let zero = Fraction::zero(sc.dom(), sc.cod());
        let r = sc.eq_residual(&zero)?;
        if r > TOL_EQ {
            return Err(Error::Verification {
                what: "cone is not annihilated by s".into(),
                residual: r,
            });
        }
        let m = self.t.dagger().compose(cone.num())?;
        let back = self.t.compose(&m)?;
        let r = back.mor().rel_dist(cone.num().mor());
        if r > TOL_EQ {
            return Err(Error::Verification {
                what: "cone does not factor through the kernel".into(),
                residual: r,
            });
        }
        Fraction::new(m, cone.den())
    }
}

/// Pairs a dagger mono `t` with `s = coker(t)` so that `[t/1] = ker [s/1]`.
pub fn frac_kernel_completion(t: &ConMor) -> Result<KernelCompletion> {
    let residual = t.mor().isometry_residual();
    if residual > TOL_ORTHO {
        return Err(Error::NotIsometry { residual });
    }
    let s = Fraction::embed(cokernel(t));
    let st = s.num().compose(t)?;
    let r = st.mat().opnorm();
    if r > TOL_EQ {
        return Err(Error::Verification {
            what: "s∘t is not zero".into(),
            residual: r,
        });
    }
    Ok(KernelCompletion { t: t.clone(), s })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimplicityKind {
    Minimal,
    Maximal,
}

/// Which subobject of `I` a mono represents, with a right inverse in the
/// maximal case.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicityWitness {
    pub kind: SimplicityKind,
    pub retraction: Option<Fraction>,
}

impl SimplicityWitness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind,
            "retraction": self.retraction.as_ref().map(Fraction::to_json),
        })
    }
}

/// Classifies a mono `[s/z]: S → I`. `S = 0` gives the minimal subobject;
/// otherwise `s` is a nonzero scalar and `[z•s† / s∘s†]` is a right inverse.
/// When `s∘s†` falls below `TOL_RANK` the equivalent `[z•s†/‖s‖ / ‖s‖]` is used.
pub fn simplicity_witness(f: &Fraction) -> Result<SimplicityWitness> {
    if f.cod().dim != 1 {
        return Err(Error::ShapeMismatch(format!(
            "simplicity witness needs codomain I, got {}",
            f.cod()
        )));
    }
    match f.dom().dim {
        0 => Ok(SimplicityWitness {
            kind: SimplicityKind::Minimal,
            retraction: None,
        }),
        1 => {
            let s = f.num();
            let n = s.mat().get(0, 0).norm();
            if n <= TOL_EQ {
                return Err(Error::NotMonic("the zero scalar is not monic".into()));
            }
            let z = f.den();
            let sd = s.dagger().scaled(&z)?;
            let ss = s.mat().get(0, 0).norm_sqr();
            let retraction = if ss > TOL_RANK {
                Fraction::new(sd, Scalar::new(s.field(), ss.into()))?
            } else {
                let inv = Scalar::new(s.field(), (1.0 / n).into());
                let num = ConMor::new(sd.mor().scaled(&inv)?)?;
                Fraction::new(num, Scalar::new(s.field(), n.into()))?
            };
            let back = f.compose(&retraction)?;
            let r = back.eq_residual(&Fraction::id(f.cod()))?;
            if r > TOL_EQ {
                return Err(Error::Verification {
                    what: "retraction does not split the mono".into(),
                    residual: r,
                });
            }
            Ok(SimplicityWitness {
                kind: SimplicityKind::Maximal,
                retraction: Some(retraction),
            })
        }
        d => Err(Error::NotMonic(format!(
            "a map from dimension {d} into I has a nonzero kernel"
        ))),
    }
}

/// The pairing `q: H → K ⊕ L` of `[r/w]: H → K` and `[t/z]: H → L`, built
/// from the mixture `s = (x, y) = (½, ½)`:
/// `q = [z•y•r ⊕ w•x•t / w•z•x•y] ∘ [p/1]` with
/// `p: H ≅ I⊗H → (I⊕I)⊗H ≅ (I⊗H)⊕(I⊗H) ≅ H⊕H`.
pub fn frac_pair(r: &Fraction, t: &Fraction) -> Result<Fraction> {
    let h = r.dom();
    if t.dom() != h {
        return Err(Error::ShapeMismatch(format!(
            "pairing needs a common domain, got {} and {}",
            h,
            t.dom()
        )));
    }
    let field = h.field;
    let i = HObj::unit(field);
    let s = mixture(field);
    let x = Scalar::new(field, s.mat().get(0, 0));
    let y = Scalar::new(field, s.mat().get(1, 0));

    let lambda = tensor_left_unitor(h);
    let p = lambda
        .oplus(&lambda)?
        .compose(&right_distributor(i, i, h))?
        .compose(&s.tensor(&ConMor::id(h))?)?
        .compose(&lambda.dagger())?;

    let (w, z) = (r.den(), t.den());
    let left = r.num().scaled(&z.mul(&y))?;
    let right = t.num().scaled(&w.mul(&x))?;
    let body = Fraction::new(left.oplus(&right)?, w.mul(&z).mul(&x).mul(&y))?;
    body.compose(&Fraction::embed(p))
}

/// `[inl†/1] ∘ q` and `[inr†/1] ∘ q` for `q: H → K ⊕ L`.
pub fn frac_projections(q: &Fraction, k: HObj, l: HObj) -> Result<(Fraction, Fraction)> {
    let pl = Fraction::embed(ConMor::inl(k, l).dagger());
    let pr = Fraction::embed(ConMor::inr(k, l).dagger());
    Ok((pl.compose(q)?, pr.compose(q)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{Field, Matrix};

    fn rs(x: f64) -> Scalar {
        Scalar::real(x)
    }

    fn sfrac(t: f64, z: f64) -> Fraction {
        Fraction::new(ConMor::scalar(&rs(t)).unwrap(), rs(z)).unwrap()
    }

    #[test]
    fn equalizer_of_equal_fractions_is_identity() {
        let f = Fraction::embed(ConMor::from_matrix(Matrix::from_real(1, 2, &[0.3, 0.4])).unwrap());
        let eq = frac_equalizer(&f, &f).unwrap();
        assert!(eq.inclusion().is_unitary(TOL_ORTHO));
    }

    #[test]
    fn equalizer_of_reflection_spans_first_axis() {
        let h = HObj::new(Field::Real, 2);
        let f = Fraction::id(h);
        let g = Fraction::embed(
            ConMor::from_matrix(Matrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0])).unwrap(),
        );
        let eq = frac_equalizer(&f, &g).unwrap();
        let e = eq.inclusion();
        assert_eq!(e.dom().dim, 1);
        assert!((e.mat().get(0, 0).norm() - 1.0).abs() < 1e-14);
        let fe = f.compose(&eq.fraction()).unwrap();
        let ge = g.compose(&eq.fraction()).unwrap();
        assert!(fe.approx_eq(&ge).unwrap());

        let cone = Fraction::new(
            ConMor::from_matrix(Matrix::from_real(2, 1, &[0.4, 0.0])).unwrap(),
            rs(0.5),
        )
        .unwrap();
        let m1 = eq.mediate(&cone).unwrap();
        assert!((m1.den().re() - 0.25).abs() < 1e-15);
        let back = eq.fraction().compose(&m1).unwrap();
        assert!(back.approx_eq(&cone).unwrap());
        let rescaled = Fraction::new(cone.num().scaled(&rs(0.5)).unwrap(), rs(0.25)).unwrap();
        let m2 = eq.mediate(&rescaled).unwrap();
        assert!(m1.approx_eq(&m2).unwrap());

        let bad =
            Fraction::embed(ConMor::from_matrix(Matrix::from_real(2, 1, &[0.0, 0.4])).unwrap());
        assert!(eq.mediate(&bad).is_err());
    }

    #[test]
    fn kernel_completion_of_inl() {
        let i = HObj::unit(Field::Real);
        let kc = frac_kernel_completion(&ConMor::inl(i, i)).unwrap();
        let s = kc.s().num();
        assert_eq!(s.mat().shape(), (1, 2));
        assert!(s.mat().get(0, 0).norm() < 1e-14);
        assert!((s.mat().get(0, 1).norm() - 1.0).abs() < 1e-14);
        let cone = Fraction::new(
            ConMor::from_matrix(Matrix::from_real(2, 1, &[0.3, 0.0])).unwrap(),
            rs(0.6),
        )
        .unwrap();
        let m = kc.mediate(&cone).unwrap();
        assert!((m.den().re() - 0.6).abs() < 1e-15);
        assert!(kc.kernel().compose(&m).unwrap().approx_eq(&cone).unwrap());
        let bad = Fraction::embed(ConMor::inr(i, i));
        assert!(kc.mediate(&bad).is_err());
    }

    #[test]
    fn kernel_completion_of_identity() {
        let h = HObj::new(Field::Complex, 2);
        let kc = frac_kernel_completion(&ConMor::id(h)).unwrap();
        assert_eq!(kc.s().cod().dim, 0);
        assert!(frac_kernel_completion(&ConMor::zero(h, h)).is_err());
    }

    #[test]
    fn simplicity_cases() {
        let zero = Fraction::zero(HObj::zero(Field::Real), HObj::unit(Field::Real));
        assert_eq!(
            simplicity_witness(&zero).unwrap().kind,
            SimplicityKind::Minimal
        );

        let half = sfrac(0.5, 1.0);
        let w = simplicity_witness(&half).unwrap();
        assert_eq!(w.kind, SimplicityKind::Maximal);
        let r = w.retraction.unwrap();
        assert!((r.num().mat().get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((r.den().re() - 0.25).abs() < 1e-15);

        let f = sfrac(0.3, 0.9);
        let r = simplicity_witness(&f).unwrap().retraction.unwrap();
        let comp = f.compose(&r).unwrap();
        assert!(comp
            .approx_eq(&Fraction::id(HObj::unit(Field::Real)))
            .unwrap());

        let tiny = sfrac(1e-6, 1.0);
        let r = simplicity_witness(&tiny).unwrap().retraction.unwrap();
        assert!(tiny
            .compose(&r)
            .unwrap()
            .approx_eq(&Fraction::id(tiny.cod()))
            .unwrap());

        let wide =
            Fraction::embed(ConMor::from_matrix(Matrix::from_real(1, 2, &[0.5, 0.5])).unwrap());
        assert!(matches!(simplicity_witness(&wide), Err(Error::NotMonic(_))));
    }

    #[test]
    fn pair_of_identities_on_unit() {
        let i = HObj::unit(Field::Real);
        let id = Fraction::id(i);
        let q = frac_pair(&id, &id).unwrap();
        let (a, b) = frac_projections(&q, i, i).unwrap();
        assert!(a.approx_eq(&id).unwrap());
        assert!(b.approx_eq(&id).unwrap());
    }

    #[test]
    fn pair_recovers_inputs_and_is_unique() {
        let i = HObj::unit(Field::Real);
        let r = sfrac(0.5, 1.0);
        let t = sfrac(0.3, 0.6);
        let q = frac_pair(&r, &t).unwrap();
        let (a, b) = frac_projections(&q, i, i).unwrap();
        assert!(a.approx_eq(&r).unwrap());
        assert!(b.approx_eq(&t).unwrap());
        let q2 = Fraction::new(q.num().scaled(&rs(0.7)).unwrap(), q.den().mul(&rs(0.7))).unwrap();
        let (a2, b2) = frac_projections(&q2, i, i).unwrap();
        assert!(a2.approx_eq(&r).unwrap() && b2.approx_eq(&t).unwrap());
        assert!(q.approx_eq(&q2).unwrap());
        // The explicit composite in Hilb: (r_h, t_h) = (0.5, 0.5).
        let qh = super::super::to_hilb(&q);
        assert!((qh.mat().get(0, 0).re - 0.5).abs() < 1e-12);
        assert!((qh.mat().get(1, 0).re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn pair_rejects_different_domains() {
        let a = Fraction::id(HObj::new(Field::Real, 1));
        let b = Fraction::id(HObj::new(Field::Real, 2));
        assert!(frac_pair(&a, &b).is_err());
    }
}
