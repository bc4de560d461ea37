//! Increasing chains of scalars `z₁ < z₂ < … ≤ z_∞` and their cocones.

use serde::{Deserialize, Serialize};

use crate::concat::{ConMor, HObj};
use crate::error::{Error, Result};
use crate::numkernel::{Scalar, TOL_CON, TOL_EQ};

use super::FiniteDiagram;

pub const DEFAULT_CHAIN_DEPTH: usize = 50;

/// A finite prefix of an increasing chain in `(0, 1]` with a declared
/// supremum, acting on `base`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    pub base: HObj,
    pub scalars: Vec<f64>,
    pub sup: f64,
}

impl ChainSpec {
    pub fn new(base: HObj, scalars: Vec<f64>, sup: f64) -> Result<Self> {
        let spec = Self { base, scalars, sup };
        spec.validate()?;
        Ok(spec)
    }

    /// `zₙ = 1 − 2⁻ⁿ` for `n = 1..=depth` with supremum 1.
    pub fn dyadic(base: HObj, depth: usize) -> Result<Self> {
        let scalars = (1..=depth).map(|n| 1.0 - 0.5f64.powi(n as i32)).collect();
        Self::new(base, scalars, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        let z = &self.scalars;
        let last = *z
            .last()
            .ok_or_else(|| Error::InvalidDiagram("a chain needs at least one scalar".into()))?;
        if !(z[0] > 0.0) {
            return Err(Error::OutOfDomain(format!(
                "first scalar must be positive, got {}",
                z[0]
            )));
        }
        if let Some(w) = z.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(Error::OutOfDomain(format!(
                "scalars must increase strictly, got {} then {}",
                w[0], w[1]
            )));
        }
        if !(last <= self.sup && self.sup <= 1.0) {
            return Err(Error::OutOfDomain(format!(
                "need z_d <= sup <= 1, got z_d = {last}, sup = {}",
                self.sup
            )));
        }
        Ok(())
    }

    pub fn depth(&self) -> usize {
        self.scalars.len()
    }

    fn scaled_id(&self, c: f64) -> ConMor {
        ConMor::id(self.base)
            .scaled(&Scalar::new(self.base.field, c.into()))
            .expect("ratio of an increasing chain is at most one")
    }

    /// `(zₙ / zₙ₊₁) • id`, the map from stage `n` to stage `n + 1` (0-based).
    pub fn transition(&self, n: usize) -> ConMor {
        self.scaled_id(self.scalars[n] / self.scalars[n + 1])
    }

    /// The chain as a diagram `base → base → …`.
    pub fn diagram(&self) -> Result<FiniteDiagram> {
        if self.depth() == 1 {
            return Ok(FiniteDiagram::single(self.base));
        }
        FiniteDiagram::chain((0..self.depth() - 1).map(|n| self.transition(n)).collect())
    }
}

/// The cocone `(zₙ / z_∞) • id` into `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarChainCocone {
    spec: ChainSpec,
    pub legs: Vec<ConMor>,
}

impl ScalarChainCocone {
    pub fn spec(&self) -> &ChainSpec {
        &self.spec
    }

    /// `max ‖legₙ₊₁ ∘ transitionₙ − legₙ‖`.
    pub fn cocone_residual(&self) -> f64 {
        (0..self.spec.depth().saturating_sub(1))
            .map(|n| {
                let lhs = self.legs[n + 1]
                    .compose(&self.spec.transition(n))
                    .expect("endomorphisms of base");
                lhs.mor().dist(self.legs[n].mor())
            })
            .fold(0.0, f64::max)
    }

    /// The mediator `u = (z_∞ / z_d) • t_d` for a compatible cocone `{tₙ}`.
    ///
    /// Checks compatibility `tₙ = (zₙ/zₙ₊₁) • tₙ₊₁`, agreement of every
    /// `(z_∞/zₙ) • tₙ` with `u`, and `u ∘ legₙ = tₙ`. A mediator with norm
    /// above `1 + TOL_CON` is rejected: the declared supremum is too small for
    /// this target.
    pub fn mediate(&self, cocone: &[ConMor]) -> Result<ConMor> {
        let z = &self.spec.scalars;
        let d = z.len();
        if cocone.len() != d {
            return Err(Error::InvalidDiagram(format!(
                "cocone has {} legs, chain has depth {d}",
                cocone.len()
            )));
        }
        let k = cocone[0].cod();
        for t in cocone {
            if t.dom() != self.spec.base || t.cod() != k {
                return Err(Error::ShapeMismatch(format!(
                    "cocone legs must be {} -> {k}, got {} -> {}",
                    self.spec.base,
                    t.dom(),
                    t.cod()
                )));
            }
        }
        for n in 0..d - 1 {
            let next = cocone[n + 1].compose(&self.spec.transition(n))?;
            let r = next.mor().rel_dist(cocone[n].mor());
            if r > TOL_EQ {
                return Err(Error::Verification {
                    what: format!("cocone is not compatible at stage {n}"),
                    residual: r,
                });
            }
        }
        let field = self.spec.base.field;
        let lift = |n: usize| {
            cocone[n]
                .mor()
                .scaled(&Scalar::new(field, (self.spec.sup / z[n]).into()))
        };
        let u = lift(d - 1)?;
        let norm = u.norm();
        if norm > 1.0 + TOL_CON {
            return Err(Error::NotContraction { norm });
        }
        for n in 0..d {
            let r = lift(n)?.rel_dist(&u);
            if r > TOL_EQ {
                return Err(Error::Verification {
                    what: format!("stage {n} lifts to a different mediator"),
                    residual: r,
                });
            }
        }
        let u = ConMor::new(u)?;
        for (n, (leg, t)) in self.legs.iter().zip(cocone).enumerate() {
            let r = u.compose(leg)?.mor().rel_dist(t.mor());
            if r > TOL_EQ {
                return Err(Error::Verification {
                    what: format!("mediator does not reproduce leg {n}"),
                    residual: r,
                });
            }
        }
        Ok(u)
    }
}

pub fn scalar_chain_cocone(spec: &ChainSpec) -> Result<ScalarChainCocone> {
    spec.validate()?;
    let legs = spec
        .scalars
        .iter()
        .map(|zn| spec.scaled_id(zn / spec.sup))
        .collect();
    Ok(ScalarChainCocone {
        spec: spec.clone(),
        legs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::Field;

    fn unit() -> HObj {
        HObj::unit(Field::Real)
    }

    fn s(x: f64) -> ConMor {
        ConMor::scalar(&Scalar::real(x)).unwrap()
    }

    #[test]
    fn dyadic_prefix_cocone() {
        let spec = ChainSpec::new(unit(), vec![0.5, 0.75, 0.875], 1.0).unwrap();
        let c = scalar_chain_cocone(&spec).unwrap();
        let legs: Vec<f64> = c.legs.iter().map(|l| l.mat().get(0, 0).re).collect();
        assert_eq!(legs, vec![0.5, 0.75, 0.875]);
        assert!(c.cocone_residual() < 1e-15);
        let cocone: Vec<ConMor> = spec.scalars.iter().map(|&z| s(z)).collect();
        let u = c.mediate(&cocone).unwrap();
        assert!((u.mat().get(0, 0).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_step_chain() {
        let spec = ChainSpec::new(unit(), vec![0.4], 0.4).unwrap();
        let c = scalar_chain_cocone(&spec).unwrap();
        assert_eq!(c.legs[0], ConMor::id(unit()));
        let t = s(-0.3);
        assert_eq!(c.mediate(std::slice::from_ref(&t)).unwrap(), t);
    }

    #[test]
    fn scaled_cocone_mediator() {
        let spec = ChainSpec::new(unit(), vec![0.5, 0.75], 1.0).unwrap();
        let c = scalar_chain_cocone(&spec).unwrap();
        let cocone = vec![s(0.45), s(0.675)];
        let u = c.mediate(&cocone).unwrap();
        assert!((u.mat().get(0, 0).re - 0.9).abs() < 1e-15);
    }

    #[test]
    fn rejects_incompatible_cocone() {
        let spec = ChainSpec::new(unit(), vec![0.5, 0.75], 1.0).unwrap();
        let c = scalar_chain_cocone(&spec).unwrap();
        assert!(matches!(
            c.mediate(&[s(0.5), s(0.5)]),
            Err(Error::Verification { .. })
        ));
    }

    #[test]
    fn declared_supremum_bounds_the_mediator() {
        // t = (0.5, 1.0) is compatible with z = (0.25, 0.5). With sup = 0.5 the
        // mediator is 1; declaring sup = 1 would need a mediator of norm 2.
        let cocone = vec![s(0.5), s(1.0)];
        let tight = ChainSpec::new(unit(), vec![0.25, 0.5], 0.5).unwrap();
        let u = scalar_chain_cocone(&tight)
            .unwrap()
            .mediate(&cocone)
            .unwrap();
        assert!((u.mat().get(0, 0).re - 1.0).abs() < 1e-15);
        let loose = ChainSpec::new(unit(), vec![0.25, 0.5], 1.0).unwrap();
        let err = scalar_chain_cocone(&loose)
            .unwrap()
            .mediate(&cocone)
            .unwrap_err();
        assert!(matches!(err, Error::NotContraction { .. }));
    }

    #[test]
    fn validation() {
        assert!(ChainSpec::new(unit(), vec![], 1.0).is_err());
        assert!(ChainSpec::new(unit(), vec![0.0, 0.5], 1.0).is_err());
        assert!(ChainSpec::new(unit(), vec![0.5, 0.5], 1.0).is_err());
        assert!(ChainSpec::new(unit(), vec![0.5, 0.7], 0.6).is_err());
        assert!(ChainSpec::new(unit(), vec![0.5, 0.7], 1.1).is_err());
        let d = ChainSpec::dyadic(unit(), DEFAULT_CHAIN_DEPTH).unwrap();
        assert_eq!(d.depth(), 50);
    }

    #[test]
    fn diagram_of_chain_has_top_last() {
        let spec = ChainSpec::dyadic(HObj::new(Field::Complex, 2), 5).unwrap();
        let d = spec.diagram().unwrap();
        assert_eq!(d.top(), 4);
        let m = d.map(0, 4).unwrap();
        assert!((m.mat().get(0, 0).re - 0.5 / (1.0 - 1.0 / 32.0)).abs() < 1e-15);
    }

    #[test]
    fn json_shape() {
        let spec = ChainSpec::new(unit(), vec![0.5], 1.0).unwrap();
        let v = serde_json::to_value(&spec).unwrap();
        assert_eq!(v["base"]["dim"], 1);
        assert_eq!(v["sup"], 1.0);
        let back: ChainSpec = serde_json::from_value(v).unwrap();
        assert_eq!(back, spec);
    }
}
