//! Dagger equalisers, dagger kernels, cokernels and the epi / dagger-mono
//! factorisation.

use serde::{Deserialize, Serialize};

use super::{check_parallel, ConMor, HObj, MorJson};
use crate::error::{Error, Result};
use crate::numkernel::{null_basis, range_isometry, rank, Matrix, TOL_EQ};

/// Dagger equaliser of parallel `f, g`: the isometric inclusion of
/// `{x | f x = g x}`, with columns an orthonormal basis of `null(f − g)`.
pub fn dagger_equalizer(f: &ConMor, g: &ConMor) -> Result<ConMor> {
    check_parallel(f.mor(), g.mor())?;
    let diff = f.mat() - g.mat();
    Ok(ConMor::from_matrix_unchecked(null_basis(&diff)))
}

/// The unique `m` with `h = e ∘ m`, for a cone `h` with `f∘h = g∘h`.
///
/// `e` must be a dagger equaliser of `f` and `g`; the mediator is `e†∘h`.
pub fn equalizer_mediator(e: &ConMor, f: &ConMor, g: &ConMor, h: &ConMor) -> Result<ConMor> {
    check_parallel(f.mor(), g.mor())?;
    let fh = f.compose(h)?;
    let gh = g.compose(h)?;
    let cone = fh.mor().rel_dist(gh.mor());
    if cone > TOL_EQ {
        return Err(Error::Verification {
            what: "cone does not equalise".into(),
            residual: cone,
        });
    }
    let m = e.dagger().compose(h)?;
    let back = e.compose(&m)?;
    let res = back.mor().rel_dist(h.mor());
    if res > TOL_EQ {
        return Err(Error::Verification {
            what: "cone does not factor through the equaliser".into(),
            residual: res,
        });
    }
    Ok(m)
}

/// Dagger kernel of `f`: the dagger equaliser of `f` and `0`.
pub fn dagger_kernel(f: &ConMor) -> ConMor {
    let z = ConMor::zero(f.dom(), f.cod());
    dagger_equalizer(f, &z).expect("f and 0 are parallel")
}

/// Cokernel `ker(t†)†: K → (range t)^⊥`. For an isometry `m` this is the
/// orthogonal projection `inr†: K ≅ N ⊕ N^⊥ → N^⊥` onto the orthocomplement
/// of its range, and `dagger_kernel(cokernel(m))` spans the range of `m`.
pub fn cokernel(t: &ConMor) -> ConMor {
    dagger_kernel(&t.dagger()).dagger()
}

/// Whether `t` is an epimorphism of **Con**, i.e. surjective.
pub fn is_epi(t: &ConMor) -> bool {
    rank(t.mat()) == t.cod().dim
}

/// `t = k ∘ e` with `e: H → E` epic and `k: E → K` a dagger monomorphism.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub e: ConMor,
    pub k: ConMor,
}

impl Factorization {
    /// The intermediate object `E`.
    pub fn image(&self) -> HObj {
        self.k.dom()
    }

    pub fn to_json(&self) -> FactorizationJson {
        FactorizationJson {
            e: self.e.mor().to_json(),
            k: self.k.mor().to_json(),
        }
    }
}

/// Wire form `{"e": Mor, "k": Mor}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationJson {
    pub e: MorJson,
    pub k: MorJson,
}

/// Epi / dagger-mono factorisation: `k` is an orthonormal basis of the range
/// of `t` and `e = k† ∘ t`.
pub fn factor(t: &ConMor) -> Factorization {
    let k = ConMor::from_matrix_unchecked(range_isometry(t.mat()));
    let e = k.dagger().compose(t).expect("k has codomain cod(t)");
    Factorization { e, k }
}

/// Residual form of the factorisation invariants:
/// `max(‖k∘e − t‖, ‖k†k − id‖)` and whether `rank(e) = dim E`.
pub fn factorization_residual(t: &ConMor, fac: &Factorization) -> (f64, bool) {
    let recon = match fac.k.compose(&fac.e) {
        Ok(ke) => ke.mor().dist(t.mor()),
        Err(_) => f64::INFINITY,
    };
    let iso = fac.k.mor().isometry_residual();
    (recon.max(iso), rank(fac.e.mat()) == fac.image().dim)
}

/// Orthogonal projection `m∘m†` onto the range of an isometry.
pub fn projector(m: &ConMor) -> Matrix {
    m.mat().matmul(&m.mat().adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{Field, TOL_ORTHO};

    fn real(rows: usize, cols: usize, e: &[f64]) -> ConMor {
        ConMor::from_matrix(Matrix::from_real(rows, cols, e)).unwrap()
    }

    #[test]
    fn equalizer_of_equal_maps_is_everything() {
        let id = ConMor::id(HObj::new(Field::Real, 2));
        let e = dagger_equalizer(&id, &id).unwrap();
        assert_eq!(e.dom().dim, 2);
        assert!(e.is_unitary(TOL_ORTHO));
    }

    #[test]
    fn equalizer_of_id_and_reflection() {
        let id = ConMor::id(HObj::new(Field::Real, 2));
        let refl = real(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let e = dagger_equalizer(&id, &refl).unwrap();
        assert_eq!(e.dom().dim, 1);
        assert!((e.mat().get(0, 0).norm() - 1.0).abs() < 1e-14);
        assert!(e.mat().get(1, 0).norm() < 1e-14);
    }

    #[test]
    fn equalizer_of_id_and_zero_is_zero_object() {
        let h = HObj::new(Field::Complex, 3);
        let e = dagger_equalizer(&ConMor::id(h), &ConMor::zero(h, h)).unwrap();
        assert_eq!(e.dom().dim, 0);
        assert_eq!(e.cod().dim, 3);
    }

    #[test]
    fn equalizer_rejects_non_parallel() {
        let a = ConMor::id(HObj::new(Field::Real, 2));
        let b = ConMor::id(HObj::new(Field::Real, 3));
        assert!(dagger_equalizer(&a, &b).is_err());
    }

    #[test]
    fn mediator_factors_cones() {
        let id = ConMor::id(HObj::new(Field::Real, 2));
        let refl = real(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let e = dagger_equalizer(&id, &refl).unwrap();
        let h = real(2, 1, &[0.7, 0.0]);
        let m = equalizer_mediator(&e, &id, &refl, &h).unwrap();
        assert!(e.compose(&m).unwrap().approx_eq(&h, TOL_EQ));
        let bad = real(2, 1, &[0.0, 0.7]);
        assert!(equalizer_mediator(&e, &id, &refl, &bad).is_err());
    }

    #[test]
    fn kernel_of_identity_is_zero_inclusion() {
        let k = dagger_kernel(&ConMor::id(HObj::new(Field::Real, 2)));
        assert_eq!(k.dom().dim, 0);
    }

    #[test]
    fn kernel_of_right_projection_is_inl() {
        let i = HObj::unit(Field::Real);
        let k = dagger_kernel(&ConMor::inr(i, i).dagger());
        let inl = ConMor::inl(i, i);
        assert!(projector(&k).dist(&projector(&inl)) < TOL_ORTHO);
    }

    #[test]
    fn factor_rank_one() {
        let t = real(2, 2, &[0.6, 0.0, 0.8, 0.0]);
        let f = factor(&t);
        assert_eq!(f.image().dim, 1);
        assert!((f.k.mat().get(0, 0).re - 0.6).abs() < 1e-14);
        assert!((f.k.mat().get(1, 0).re - 0.8).abs() < 1e-14);
        assert!((f.e.mat().get(0, 0).re - 1.0).abs() < 1e-14);
        assert!(f.e.mat().get(0, 1).norm() < 1e-14);
        let (res, epi) = factorization_residual(&t, &f);
        assert!(res < 1e-12 && epi);
    }

    #[test]
    fn factor_zero_is_empty() {
        let t = ConMor::zero(HObj::new(Field::Real, 2), HObj::new(Field::Real, 3));
        let f = factor(&t);
        assert_eq!(f.image().dim, 0);
        assert_eq!(f.e.mat().shape(), (0, 2));
        assert_eq!(f.k.mat().shape(), (3, 0));
    }

    #[test]
    fn factor_isometry_gives_unitary_epi() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let t = real(3, 2, &[s, 0.0, s, 0.0, 0.0, 1.0]);
        let f = factor(&t);
        assert!(f.e.is_unitary(1e-12));
        assert!(projector(&f.k).dist(&projector(&t)) < 1e-12);
    }

    #[test]
    fn epi_means_surjective() {
        assert!(is_epi(&real(1, 2, &[0.5, 0.5])));
        assert!(!is_epi(&real(2, 1, &[0.5, 0.5])));
    }
}
