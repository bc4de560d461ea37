//! Directed colimits at finite truncation.
//!
//! A finite directed poset has a greatest node, so the colimit of a finite
//! diagram is the object at the top with the diagram's maps into it as legs.
//! Infinite increasing chains of scalars are represented by a finite prefix
//! and a declared supremum ([`ChainSpec`]).

mod chain;

use serde::{Deserialize, Serialize};

use crate::concat::{check_field, ConMor, HObj, Mor, MorJson};
use crate::error::{Error, Result};
use crate::numkernel::{TOL_EQ, TOL_ORTHO};

pub use chain::{scalar_chain_cocone, ChainSpec, ScalarChainCocone, DEFAULT_CHAIN_DEPTH};

/// A generating edge `from ≤ to` of a diagram.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub map: ConMor,
}

/// A functor from a finite directed poset into **Con**.
///
/// The order is the reflexive-transitive closure of the generating edges.
/// Construction computes the map for every comparable pair and checks that
/// all paths agree within `TOL_EQ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDiagram {
    objects: Vec<HObj>,
    edges: Vec<Edge>,
    // maps[i][j] is the map i → j when i ≤ j.
    maps: Vec<Vec<Option<ConMor>>>,
    top: usize,
}

impl FiniteDiagram {
    pub fn new(objects: Vec<HObj>, edges: Vec<Edge>) -> Result<Self> {
        let n = objects.len();
        if n == 0 {
            return Err(Error::InvalidDiagram(
                "a diagram needs at least one node".into(),
            ));
        }
        let field = objects[0].field;
        for o in &objects {
            check_field(field, o.field)?;
        }
        for (idx, e) in edges.iter().enumerate() {
            if e.from >= n || e.to >= n {
                return Err(Error::InvalidDiagram(format!(
                    "edge {idx} refers to a missing node"
                )));
            }
            if e.map.dom() != objects[e.from] || e.map.cod() != objects[e.to] {
                return Err(Error::InvalidDiagram(format!(
                    "edge {idx} is {} -> {} but nodes are {} and {}",
                    e.map.dom(),
                    e.map.cod(),
                    objects[e.from],
                    objects[e.to]
                )));
            }
            if e.from == e.to && !e.map.approx_eq(&ConMor::id(objects[e.from]), TOL_EQ) {
                return Err(Error::InvalidDiagram(format!(
                    "loop at node {} is not the identity",
                    e.from
                )));
            }
        }
        let order = topological_order(n, &edges)?;

        let mut maps: Vec<Vec<Option<ConMor>>> = vec![vec![None; n]; n];
        for i in 0..n {
            maps[i][i] = Some(ConMor::id(objects[i]));
            for &j in order.iter() {
                for e in edges.iter().filter(|e| e.to == j && e.from != j) {
                    let Some(prev) = maps[i][e.from].clone() else {
                        continue;
                    };
                    let cand = e.map.compose(&prev)?;
                    match &maps[i][j] {
                        None => maps[i][j] = Some(cand),
                        Some(existing) => {
                            let r = existing.mor().rel_dist(cand.mor());
                            if r > TOL_EQ {
                                return Err(Error::InvalidDiagram(format!(
                                    "paths from node {i} to node {j} disagree (residual {r:.3e})"
                                )));
                            }
                        }
                    }
                }
            }
        }

        let top = (0..n)
            .find(|&t| (0..n).all(|i| maps[i][t].is_some()))
            .ok_or_else(|| {
                Error::InvalidDiagram("not directed: no node lies above every other".into())
            })?;
        Ok(Self {
            objects,
            edges,
            maps,
            top,
        })
    }

    /// The chain `H₀ → H₁ → … → Hₙ` with the given successive maps.
    pub fn chain(maps: Vec<ConMor>) -> Result<Self> {
        let first = maps
            .first()
            .ok_or_else(|| Error::InvalidDiagram("a chain needs at least one map".into()))?;
        let mut objects = vec![first.dom()];
        objects.extend(maps.iter().map(ConMor::cod));
        let edges = maps
            .into_iter()
            .enumerate()
            .map(|(i, map)| Edge {
                from: i,
                to: i + 1,
                map,
            })
            .collect();
        Self::new(objects, edges)
    }

    /// A one-node diagram.
    pub fn single(obj: HObj) -> Self {
        Self::new(vec![obj], Vec::new()).expect("a single node is directed")
    }

    pub fn objects(&self) -> &[HObj] {
        &self.objects
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.maps[i][j].is_some()
    }

    /// The map `i → j` for `i ≤ j`.
    pub fn map(&self, i: usize, j: usize) -> Option<&ConMor> {
        self.maps[i][j].as_ref()
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            objects: self.objects.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    from: e.from,
                    to: e.to,
                    map: e.map.mor().to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<Self> {
        let edges = j
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    from: e.from,
                    to: e.to,
                    map: ConMor::new(Mor::from_json(&e.map)?)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(j.objects.clone(), edges)
    }
}

/// Wire form `{"objects": [HObj], "edges": [{"from", "to", "map": Mor}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub objects: Vec<HObj>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub map: MorJson,
}

fn topological_order(n: usize, edges: &[Edge]) -> Result<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for e in edges.iter().filter(|e| e.from != e.to) {
        indeg[e.to] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = ready.pop() {
        order.push(i);
        for e in edges.iter().filter(|e| e.from == i && e.to != i) {
            indeg[e.to] -= 1;
            if indeg[e.to] == 0 {
                ready.push(e.to);
            }
        }
    }
    if order.len() != n {
        return Err(Error::InvalidDiagram(
            "edges contain a cycle, so they do not generate a partial order".into(),
        ));
    }
    Ok(order)
}

/// The colimit of a finite directed diagram: the top object with legs the
/// diagram maps into it.
#[derive(Debug, Clone, PartialEq)]
pub struct Colimit {
    pub apex: HObj,
    pub legs: Vec<ConMor>,
    top: usize,
}

impl Colimit {
    /// For another cocone `{tᵢ}`, returns `t_top` after checking that
    /// `t_top ∘ legᵢ = tᵢ` for every node.
    pub fn mediate(&self, cocone: &[ConMor]) -> Result<ConMor> {
        if cocone.len() != self.legs.len() {
            return Err(Error::InvalidDiagram(format!(
                "cocone has {} legs, diagram has {} nodes",
                cocone.len(),
                self.legs.len()
            )));
        }
        let u = cocone[self.top].clone();
        for (i, (leg, t)) in self.legs.iter().zip(cocone).enumerate() {
            let r = u.compose(leg)?.mor().rel_dist(t.mor());
            if r > TOL_EQ {
                return Err(Error::Verification {
                    what: format!("cocone leg {i} does not factor through the colimit"),
                    residual: r,
                });
            }
        }
        Ok(u)
    }

    /// `‖cⱼ ∘ d(i,j) − cᵢ‖` maximised over comparable pairs.
    pub fn cocone_residual(&self, d: &FiniteDiagram) -> f64 {
        let mut worst = 0f64;
        for i in 0..d.len() {
            for j in 0..d.len() {
                if let Some(m) = d.map(i, j) {
                    let lhs = self.legs[j].compose(m).expect("legs match diagram");
                    worst = worst.max(lhs.mor().dist(self.legs[i].mor()));
                }
            }
        }
        worst
    }
}

pub fn finite_colimit(d: &FiniteDiagram) -> Colimit {
    let top = d.top();
    let legs = (0..d.len())
        .map(|i| d.map(i, top).expect("top is above every node").clone())
        .collect();
    Colimit {
        apex: d.objects()[top],
        legs,
        top,
    }
}

/// Residuals of the adjoint-cocone argument on a diagram of isometries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainCheckReport {
    /// `max ‖t_ik† ∘ t_jk − t_ij†‖` over `i ≤ j ≤ k`.
    pub adjoint_residual: f64,
    /// `max ‖cᵢ† ∘ cᵢ − id‖` over the colimit legs.
    pub leg_isometry_residual: f64,
    pub pass: bool,
}

pub fn dagger_mono_chain_check(d: &FiniteDiagram) -> Result<ChainCheckReport> {
    for e in d.edges() {
        let residual = e.map.mor().isometry_residual();
        if residual > TOL_ORTHO {
            return Err(Error::NotIsometry { residual });
        }
    }
    let n = d.len();
    let mut adjoint = 0f64;
    for i in 0..n {
        for j in 0..n {
            let Some(tij) = d.map(i, j) else { continue };
            for k in 0..n {
                let (Some(tik), Some(tjk)) = (d.map(i, k), d.map(j, k)) else {
                    continue;
                };
                let lhs = tik.dagger().compose(tjk)?;
                adjoint = adjoint.max(lhs.mor().dist(tij.dagger().mor()));
            }
        }
    }
    let colim = finite_colimit(d);
    let legs = colim
        .legs
        .iter()
        .map(|l| l.mor().isometry_residual())
        .fold(0f64, f64::max);
    Ok(ChainCheckReport {
        adjoint_residual: adjoint,
        leg_isometry_residual: legs,
        pass: adjoint <= TOL_EQ && legs <= TOL_ORTHO,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{Field, Matrix};

    fn obj(d: usize) -> HObj {
        HObj::new(Field::Real, d)
    }

    fn inl_chain(depth: usize) -> FiniteDiagram {
        let i = obj(1);
        FiniteDiagram::chain((1..=depth).map(|d| ConMor::inl(obj(d), i)).collect()).unwrap()
    }

    #[test]
    fn single_node_colimit_is_identity() {
        let d = FiniteDiagram::single(obj(3));
        let c = finite_colimit(&d);
        assert_eq!(c.apex, obj(3));
        assert_eq!(c.legs, vec![ConMor::id(obj(3))]);
    }

    #[test]
    fn chain_of_two_isometries() {
        let d = inl_chain(2);
        let c = finite_colimit(&d);
        assert_eq!(c.apex, obj(3));
        for l in &c.legs {
            assert!(l.is_isometry(TOL_ORTHO));
        }
        assert!(c.cocone_residual(&d) < 1e-15);
        let r = dagger_mono_chain_check(&d).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn vee_mediator_reproduces_cocone() {
        // 0 → 2 ← 1 with 2 the top.
        let a = ConMor::inl(obj(1), obj(1));
        let b = ConMor::inr(obj(1), obj(1));
        let d = FiniteDiagram::new(
            vec![obj(1), obj(1), obj(2)],
            vec![
                Edge {
                    from: 0,
                    to: 2,
                    map: a.clone(),
                },
                Edge {
                    from: 1,
                    to: 2,
                    map: b.clone(),
                },
            ],
        )
        .unwrap();
        assert_eq!(d.top(), 2);
        let c = finite_colimit(&d);
        let u = ConMor::from_matrix(Matrix::from_real(1, 2, &[0.3, -0.4])).unwrap();
        let cocone = vec![u.compose(&a).unwrap(), u.compose(&b).unwrap(), u.clone()];
        assert_eq!(c.mediate(&cocone).unwrap(), u);
        let mut bad = cocone;
        bad[0] = ConMor::scalar(&crate::numkernel::Scalar::real(0.9)).unwrap();
        assert!(c.mediate(&bad).is_err());
    }

    #[test]
    fn rejects_non_directed() {
        let d = FiniteDiagram::new(vec![obj(1), obj(1)], vec![]);
        assert!(matches!(d, Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn rejects_non_commuting_square() {
        let i = obj(1);
        let half = ConMor::scalar(&crate::numkernel::Scalar::real(0.5)).unwrap();
        let id = ConMor::id(i);
        let d = FiniteDiagram::new(
            vec![i, i, i, i],
            vec![
                Edge {
                    from: 0,
                    to: 1,
                    map: half.clone(),
                },
                Edge {
                    from: 0,
                    to: 2,
                    map: id.clone(),
                },
                Edge {
                    from: 1,
                    to: 3,
                    map: id.clone(),
                },
                Edge {
                    from: 2,
                    to: 3,
                    map: id,
                },
            ],
        );
        assert!(matches!(d, Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn rejects_cycles_and_bad_shapes() {
        let i = obj(1);
        let half = ConMor::scalar(&crate::numkernel::Scalar::real(0.5)).unwrap();
        let cyc = FiniteDiagram::new(
            vec![i, i],
            vec![
                Edge {
                    from: 0,
                    to: 1,
                    map: half.clone(),
                },
                Edge {
                    from: 1,
                    to: 0,
                    map: half.clone(),
                },
            ],
        );
        assert!(cyc.is_err());
        let shape = FiniteDiagram::new(
            vec![i, obj(2)],
            vec![Edge {
                from: 0,
                to: 1,
                map: half,
            }],
        );
        assert!(shape.is_err());
    }

    #[test]
    fn identity_chain_is_isometric() {
        let h = obj(2);
        let d = FiniteDiagram::chain(vec![ConMor::id(h), ConMor::id(h), ConMor::id(h)]).unwrap();
        let r = dagger_mono_chain_check(&d).unwrap();
        assert_eq!(r.adjoint_residual, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn chain_check_rejects_non_isometry() {
        let half = ConMor::scalar(&crate::numkernel::Scalar::real(0.5)).unwrap();
        let d = FiniteDiagram::chain(vec![half]).unwrap();
        assert!(dagger_mono_chain_check(&d).is_err());
    }

    #[test]
    fn inl_chain_to_depth_three() {
        let d = inl_chain(3);
        let c = finite_colimit(&d);
        assert_eq!(c.apex, obj(4));
        let leg0 = &c.legs[0];
        assert_eq!(leg0.mat().get(0, 0).re, 1.0);
        assert!(dagger_mono_chain_check(&d).unwrap().pass);
    }

    #[test]
    fn diagram_json_round_trip() {
        let d = inl_chain(2);
        let s = serde_json::to_string(&d.to_json()).unwrap();
        let back: DiagramJson = serde_json::from_str(&s).unwrap();
        assert_eq!(FiniteDiagram::from_json(&back).unwrap(), d);
    }
}
