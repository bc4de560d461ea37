//! Subobjects determined by positive maps, and the subobjects of the unit.

use super::{factor, ConMor, HObj, Mor};
use crate::error::{Error, Result};
use crate::numkernel::{polar_left, rank, Matrix, Scalar, TOL_CON, TOL_EQ, TOL_ORTHO};

/// For injective contractions `r: H → L`, `s: K → L` with `r∘r† = s∘s†`,
/// returns the unitary `t: H → K` with `r = s∘t`.
///
/// With left polar decompositions `r = p·u` and `s = p·v` (same positive part
/// since `r r† = s s†`), injectivity makes `u` and `v` isometries with equal
/// range projections, and `t = v†·u`.
pub fn positivity_witness(r: &ConMor, s: &ConMor) -> Result<ConMor> {
    if r.cod() != s.cod() {
        return Err(Error::ShapeMismatch(format!(
            "positivity witness needs a common codomain, got {} and {}",
            r.cod(),
            s.cod()
        )));
    }
    for m in [r, s] {
        let rk = rank(m.mat());
        if rk != m.dom().dim {
            return Err(Error::NotInjective {
                rank: rk,
                dim: m.dom().dim,
            });
        }
    }
    if r.dom().dim != s.dom().dim {
        return Err(Error::ShapeMismatch(format!(
            "injective maps with equal range projections must have equal rank, got {} and {}",
            r.dom().dim,
            s.dom().dim
        )));
    }
    let rr = Mor::from_matrix(r.mat().matmul(&r.mat().adjoint()));
    let ss = Mor::from_matrix(s.mat().matmul(&s.mat().adjoint()));
    let positive = rr.rel_dist(&ss);
    if positive > TOL_EQ {
        return Err(Error::Verification {
            what: "r∘r† ≠ s∘s†".into(),
            residual: positive,
        });
    }

    let u = polar_left(r.mat()).u;
    let v = polar_left(s.mat()).u;
    let t = v.adjoint().matmul(&u);
    let t = ConMor::from_matrix_unchecked(t);
    let unitary = t.mor().unitary_residual();
    if unitary > TOL_ORTHO {
        return Err(Error::Verification {
            what: "witness is not unitary".into(),
            residual: unitary,
        });
    }
    let st = s.compose(&t)?;
    let recon = st.mor().rel_dist(r.mor());
    if recon > TOL_EQ {
        return Err(Error::Verification {
            what: "r ≠ s∘t".into(),
            residual: recon,
        });
    }
    Ok(t)
}

/// For `t` with `t†∘t = |z|²·id` and `z ≠ 0`, the dagger mono `s` with
/// `t = z•s`.
///
/// With `t = k∘e` factored, `e†` and `z̄•id` satisfy the positivity equation,
/// so `e† = z̄•w` for a unitary `w`, and `s = k∘w†`.
pub fn dagger_mono_extraction(t: &ConMor, z: &Scalar) -> Result<ConMor> {
    let h = t.dom();
    let zz = z.modulus() * z.modulus();
    if !(zz > 0.0) {
        return Err(Error::ZeroDenominator {
            modulus: z.modulus(),
        });
    }
    let gram = Mor::from_matrix(t.mat().adjoint().matmul(t.mat()));
    let target = Mor::from_matrix(Matrix::identity(h.field, h.dim).scale_real(zz));
    let r = gram.dist(&target) / zz.max(1.0);
    if r > TOL_EQ {
        return Err(Error::Verification {
            what: "t†∘t ≠ |z|²·id".into(),
            residual: r,
        });
    }
    let fac = factor(t);
    let zbar = ConMor::id(HObj::new(h.field, h.dim)).scaled(&z.conj())?;
    let w = positivity_witness(&fac.e.dagger(), &zbar)?;
    let s = fac.k.compose(&w.dagger())?;
    let back = s.mor().scaled(z)?;
    let r = back.rel_dist(t.mor());
    if r > TOL_EQ {
        return Err(Error::Verification {
            what: "t ≠ z•s".into(),
            residual: r,
        });
    }
    Ok(s)
}

fn check_mono_into_unit(m: &ConMor) -> Result<()> {
    if m.cod().dim != 1 {
        return Err(Error::NotMonic(format!(
            "codomain has dimension {}, expected the unit",
            m.cod().dim
        )));
    }
    match m.dom().dim {
        0 => Ok(()),
        1 if m.mat().get(0, 0).norm() > TOL_EQ => Ok(()),
        1 => Err(Error::NotMonic("the zero scalar is not monic".into())),
        d => Err(Error::NotMonic(format!(
            "a map from dimension {d} into the unit has a nonzero kernel"
        ))),
    }
}

/// The point of `[0, 1]` classifying the subobject of `I` represented by the
/// mono `m`: 0 for the inclusion of the zero object, `|m|` otherwise.
pub fn subobject_class(m: &ConMor) -> Result<f64> {
    check_mono_into_unit(m)?;
    Ok(match m.dom().dim {
        0 => 0.0,
        _ => m.mat().get(0, 0).norm().min(1.0),
    })
}

/// A contraction `f` with `m = m2 ∘ f`, if one exists.
pub fn subobject_factor(m: &ConMor, m2: &ConMor) -> Result<Option<ConMor>> {
    check_mono_into_unit(m)?;
    check_mono_into_unit(m2)?;
    match (m.dom().dim, m2.dom().dim) {
        (0, _) => Ok(Some(ConMor::zero(m.dom(), m2.dom()))),
        (_, 0) => Ok(None),
        _ => {
            let q = m.mat().get(0, 0) / m2.mat().get(0, 0);
            if q.norm() > 1.0 + TOL_CON {
                return Ok(None);
            }
            let f = ConMor::from_matrix(Matrix::scalar(m.field(), q))?;
            Ok(Some(f))
        }
    }
}

/// `m ≤ m2` as subobjects of `I`.
pub fn subobject_leq(m: &ConMor, m2: &ConMor) -> Result<bool> {
    Ok(subobject_factor(m, m2)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concat::HObj;
    use crate::numkernel::Field;

    fn real(rows: usize, cols: usize, e: &[f64]) -> ConMor {
        ConMor::from_matrix(Matrix::from_real(rows, cols, e)).unwrap()
    }

    #[test]
    fn extraction_recovers_the_dagger_mono() {
        let s = real(3, 2, &[0.6, 0.0, 0.0, 1.0, 0.8, 0.0]);
        let z = Scalar::real(-0.4);
        let t = s.scaled(&z).unwrap();
        let got = dagger_mono_extraction(&t, &z).unwrap();
        assert!(got.is_isometry(TOL_ORTHO));
        assert!(got.mor().scaled(&z).unwrap().rel_dist(t.mor()) <= TOL_EQ);
        let bad = real(3, 2, &[0.6, 0.0, 0.0, 0.5, 0.8, 0.0]);
        assert!(dagger_mono_extraction(&bad, &z).is_err());
    }

    #[test]
    fn witness_of_equal_maps_is_identity() {
        let r = real(2, 1, &[0.6, 0.8]);
        let t = positivity_witness(&r, &r).unwrap();
        assert!((t.mat().get(0, 0).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn witness_of_negated_column_is_minus_one() {
        let r = real(2, 1, &[0.6, 0.8]);
        let s = real(2, 1, &[-0.6, -0.8]);
        let t = positivity_witness(&r, &s).unwrap();
        assert!((t.mat().get(0, 0).re + 1.0).abs() < 1e-12);
        assert!(s.compose(&t).unwrap().approx_eq(&r, 1e-12));
    }

    #[test]
    fn witness_rejects_non_injective() {
        let r = real(2, 2, &[0.5, 0.5, 0.0, 0.0]);
        assert!(matches!(
            positivity_witness(&r, &r),
            Err(Error::NotInjective { .. })
        ));
    }

    #[test]
    fn witness_rejects_different_ranges() {
        let r = real(2, 1, &[1.0, 0.0]);
        let s = real(2, 1, &[0.0, 1.0]);
        assert!(matches!(
            positivity_witness(&r, &s),
            Err(Error::Verification { .. })
        ));
    }

    #[test]
    fn classes_of_monos_into_unit() {
        let zero_mono = ConMor::zero(HObj::zero(Field::Real), HObj::unit(Field::Real));
        assert_eq!(subobject_class(&zero_mono).unwrap(), 0.0);
        assert_eq!(subobject_class(&real(1, 1, &[0.5])).unwrap(), 0.5);
        assert_eq!(subobject_class(&real(1, 1, &[-0.5])).unwrap(), 0.5);
        assert!(subobject_class(&real(1, 2, &[0.5, 0.5])).is_err());
        assert!(subobject_class(&real(1, 1, &[0.0])).is_err());
    }

    #[test]
    fn negative_scalar_class_matches_unitary_search() {
        // Oracle: find u ∈ {±1} and m' ∈ (0,1] on a grid with m = m'·u.
        let m = -0.5f64;
        let mut found = None;
        for u in [-1.0f64, 1.0] {
            for k in 1..=100 {
                let mp = k as f64 / 100.0;
                if (mp * u - m).abs() < 1e-12 {
                    found = Some(mp);
                }
            }
        }
        let class = subobject_class(&real(1, 1, &[m])).unwrap();
        assert_eq!(Some(class), found);
    }

    #[test]
    fn factoring_follows_class_order() {
        let a = real(1, 1, &[0.3]);
        let b = real(1, 1, &[-0.6]);
        assert!(subobject_leq(&a, &b).unwrap());
        assert!(!subobject_leq(&b, &a).unwrap());
        let zero_mono = ConMor::zero(HObj::zero(Field::Real), HObj::unit(Field::Real));
        assert!(subobject_leq(&zero_mono, &a).unwrap());
        assert!(!subobject_leq(&a, &zero_mono).unwrap());
    }
}
