use num_complex::Complex64;

use super::axioms::{compose, rel, rel_mor, rescale};
use super::fraction_lemmas as frac;
use super::{CheckKind, CheckSpec, Gen, Trial};
use crate::colimits::{scalar_chain_cocone, ChainSpec, FiniteDiagram, DEFAULT_CHAIN_DEPTH};
use crate::concat::{
    averaging_compression, cokernel, compress_average, dagger_kernel, dagger_mono_extraction,
    factor, is_epi, projector, russo_dye, scalar_act, subobject_class, subobject_factor, ConMor,
    HObj, Mor,
};
use crate::numkernel::{polar_left, range_isometry, rank, svd, Field, Matrix, Scalar};

const fn lemma(
    id: &'static str,
    summary: &'static str,
    mutation: &'static str,
    run: super::CheckFn,
) -> CheckSpec {
    CheckSpec::new(id, CheckKind::Lemma, summary, mutation, run)
}

pub(super) static REGISTRY: &[CheckSpec] = &[
    lemma(
        "subobjects-of-unit",
        "subobjects of I are ordered like [0, 1] on a 21-point grid",
        "a map from dimension 2 placed in the grid",
        subobjects_of_unit,
    ),
    lemma(
        "polar-decomposition",
        "a = p u with p = (a a†)^(1/2) and u a partial isometry",
        "p replaced by a a†",
        polar_decomposition,
    ),
    lemma(
        "colimit-seminorm",
        "norms decrease along contraction chains and are attained at the top",
        "first edge replaced by 1.01 times an isometry",
        colimit_seminorm,
    ),
    lemma(
        "factorisation",
        "t = k ∘ e with e epic and k an isometry onto the range",
        "k scaled by 0.9",
        factorisation,
    ),
    lemma(
        "scalars-monic-epic",
        "nonzero scalars are monic and epic",
        "the scalar 0",
        scalars_monic_epic,
    ),
    lemma(
        "scalar-cancellation",
        "z • s = z • t with z nonzero forces s = t",
        "the scalar 0",
        scalar_cancellation,
    ),
    lemma(
        "dagger-isomorphisms",
        "isomorphisms of Con are unitary and split monos are isometries",
        "an invertible non-unitary claimed as an isomorphism",
        dagger_isomorphisms,
    ),
    lemma(
        "dagger-mono-extraction",
        "t† t = |z|² id gives a dagger mono s with t = z • s",
        "one column of s halved",
        dagger_mono_extraction_check,
    ),
    lemma(
        "fraction-congruence",
        "fraction equivalence is an equivalence relation and a congruence",
        "numerator rescaled without its denominator",
        frac::congruence,
    ),
    lemma(
        "universal-property",
        "the functor to Hilb preserves structure and inverts nonzero scalars",
        "a functor that forgets denominators",
        frac::universal_property,
    ),
    lemma(
        "localisation-equivalence",
        "Con[D⁻¹] to Hilb is full and faithful",
        "from_hilb that forgets the denominator",
        frac::localisation_equivalence,
    ),
    lemma(
        "fraction-monoidal",
        "tensor and direct sum of fractions are congruences",
        "tensor with an unmultiplied denominator",
        frac::monoidal,
    ),
    lemma(
        "fraction-dagger",
        "[t/z]† = [t†/z̄]; dagger monos correspond to isometries",
        "an isometry scaled by 0.9",
        frac::dagger,
    ),
    lemma(
        "fraction-simple",
        "monos into I are minimal or split",
        "retraction with its numerator halved",
        frac::simple,
    ),
    lemma(
        "fraction-separator",
        "probes [x ⊗ y / w] separate fractions",
        "probe family restricted to x ⊗ e_0",
        frac::separator,
    ),
    lemma(
        "fraction-biproducts",
        "pairing through the mixture has the right projections and is unique",
        "second component halved",
        frac::biproducts,
    ),
    lemma(
        "fraction-equalisers",
        "fraction equalisers mediate uniquely",
        "inclusion halved",
        frac::equalisers,
    ),
    lemma(
        "fraction-kernels",
        "[t/1] is the kernel of [coker t / 1]",
        "kernel halved",
        frac::kernels,
    ),
    lemma(
        "fraction-colimits",
        "colimit legs of isometry diagrams are isometries",
        "an edge scaled by 0.9",
        frac::colimits,
    ),
    lemma(
        "scalar-disc",
        "every z in [0, 1] is a compression of an isometry; |z| > 1 is excluded",
        "isometry with components (z, 1 - z)",
        scalar_disc,
    )
    .exhaustive(),
    lemma(
        "scalar-chain-colimit",
        "scalar chains with a declared supremum form colimiting cocones",
        "first leg halved",
        scalar_chain_colimit,
    ),
    lemma(
        "russo-dye",
        "square complex contractions are averages of two unitaries",
        "second unitary replaced by the first",
        russo_dye_check,
    ),
];

fn subobjects_of_unit(t: &mut Trial, g: &mut Gen) {
    let field = g.field();
    let i = HObj::unit(field);
    let tol = t.tols().eq;
    let mut grid: Vec<(f64, ConMor)> = (0..=20)
        .map(|n| {
            let c = n as f64 / 20.0;
            let m = if n == 0 {
                ConMor::zero(HObj::zero(field), i)
            } else {
                let z = g.scalar(c, c);
                ConMor::scalar(&z).expect("|z| ≤ 1")
            };
            (c, m)
        })
        .collect();
    if t.mutate() {
        let m = g.contraction(2, 1);
        grid[10].1 = m;
    }
    for (_, m) in &grid {
        t.absorb(m.mat());
    }
    for (c, m) in &grid {
        if let Some(class) = t.attempt(subobject_class(m)) {
            t.eq((class - c).abs());
        }
    }
    for (ci, mi) in &grid {
        for (cj, mj) in &grid {
            let Some(f) = t.attempt(subobject_factor(mi, mj)) else {
                continue;
            };
            t.require(f.is_some() == (*ci <= cj + tol));
            if let Some(f) = f {
                if let Some(back) = compose(t, mj, &f) {
                    t.eq(rel(&back, mi));
                }
            }
        }
    }
}

fn polar_decomposition(t: &mut Trial, g: &mut Gen) {
    let (d, c) = (g.dim(), g.dim());
    let a = if g.uniform() < 0.5 {
        g.contraction(d, c)
    } else {
        let r = g.range(0, d.min(c));
        g.low_rank(d, c, r)
    };
    t.absorb(a.mat());
    let a = a.mat();
    let mut polar = polar_left(a);
    if t.mutate() {
        polar.p = a.matmul(&a.adjoint());
    }
    let (p, u) = (&polar.p, &polar.u);
    t.recon(p.matmul(u).dist(a));
    t.ortho(p.dist(&p.adjoint()));
    t.eq(p.matmul(p).dist(&a.matmul(&a.adjoint())));
    t.ortho(u.matmul(&u.adjoint()).matmul(u).dist(u));
    let q = range_isometry(a);
    t.ortho(u.matmul(&u.adjoint()).dist(&q.matmul(&q.adjoint())));
    let qs = range_isometry(&a.adjoint());
    t.ortho(u.adjoint().matmul(u).dist(&qs.matmul(&qs.adjoint())));
}

fn colimit_seminorm(t: &mut Trial, g: &mut Gen) {
    let nodes = g.range(2, 5);
    let mut dims: Vec<usize> = (0..nodes).map(|_| g.dim()).collect();
    if t.mutate() {
        dims[1] = dims[1].max(dims[0]);
    }
    let mut maps: Vec<ConMor> = dims.windows(2).map(|w| g.contraction(w[0], w[1])).collect();
    if t.mutate() {
        let v = g.isometry(dims[0], dims[1]).expect("dims[1] ≥ dims[0]");
        maps[0] = rescale(&v, 1.01);
    }
    for m in &maps {
        t.absorb(m.mat());
    }
    let con = t.tols().con;
    for m in &maps {
        t.residual((m.norm() - 1.0).max(0.0), con);
    }
    let Some(d) = t.attempt(FiniteDiagram::chain(maps)) else {
        return;
    };
    let x = g.unit_vector(dims[0]);
    let norms: Vec<f64> = (0..nodes)
        .map(|n| {
            let m = d.map(0, n).expect("chain is totally ordered");
            m.mat().matmul(&x).frobenius_norm()
        })
        .collect();
    let tol = t.tols().eq;
    for w in norms.windows(2) {
        t.residual((w[1] - w[0]).max(0.0), tol);
    }
    // the seminorm limit is attained by the colimit leg of the first node
    let leg = d.map(0, d.top()).expect("top is above every node");
    t.eq((leg.mat().matmul(&x).frobenius_norm() - norms[nodes - 1]).abs());
}

fn factorisation(t: &mut Trial, g: &mut Gen) {
    let (d, c) = (g.dim(), g.dim());
    let r = g.range(1, d.min(c));
    let tm = if g.uniform() < 0.5 {
        g.contraction(d, c)
    } else {
        g.low_rank(d, c, r)
    };
    t.absorb(tm.mat());
    let mut fac = factor(&tm);
    if t.mutate() {
        fac.k = rescale(&fac.k, 0.9);
    }
    if let Some(ke) = compose(t, &fac.k, &fac.e) {
        t.eq(rel(&ke, &tm));
    }
    t.ortho(fac.k.mor().isometry_residual());
    t.require(rank(fac.e.mat()) == fac.image().dim);
    t.require(is_epi(&fac.e));
    let image = dagger_kernel(&cokernel(&tm));
    t.ortho(projector(&fac.k).dist(&projector(&image)));
}

fn nonzero_scalar(t: &Trial, g: &mut Gen) -> Scalar {
    let z = g.scalar(0.05, 1.0);
    if t.mutate() {
        Scalar::new(g.field(), Complex64::new(0.0, 0.0))
    } else {
        z
    }
}

fn scalars_monic_epic(t: &mut Trial, g: &mut Gen) {
    let z = nonzero_scalar(t, g);
    let Some(zm) = t.attempt(ConMor::scalar(&z)) else {
        return;
    };
    t.absorb(zm.mat());
    t.require(is_epi(&zm));
    t.require(is_epi(&zm.dagger()));
    let (a, b) = (g.scalar(0.0, 1.0), g.scalar(0.0, 1.0));
    let lhs = (z.value() * a.value() - z.value() * b.value()).norm();
    let rhs = z.modulus() * (a.value() - b.value()).norm();
    t.eq((lhs - rhs).abs());
    // z ∘ f = z ∘ f' pins f down for maps f: H → I
    let h = g.dim();
    let f = g.contraction(h, 1);
    if let Some(zf) = compose(t, &zm, &f) {
        t.require(rank(zf.mat()) == rank(f.mat()));
    }
}

fn scalar_cancellation(t: &mut Trial, g: &mut Gen) {
    let z = nonzero_scalar(t, g);
    let (d, c) = (g.dim(), g.dim());
    let s = g.contraction(d, c);
    let other = g.contraction(d, c);
    t.absorb_all(&[&s, &other]);
    let (Some(zs), Some(zo)) = (
        t.attempt(scalar_act(&z, &s)),
        t.attempt(scalar_act(&z, &other)),
    ) else {
        return;
    };
    let inv = Scalar::new(z.field(), Complex64::new(1.0, 0.0) / z.value());
    if let Some(back) = t.attempt(zs.scaled(&inv)) {
        t.require(back.mat().is_finite());
        t.eq(rel_mor(&back, s.mor()));
    }
    // z • s = z • s' must force s = s'
    let tol = t.tols().eq;
    if rel_mor(&zs, &zo) <= tol {
        t.eq(rel(&s, &other));
    }
    t.eq((zs.dist(&zo) - z.modulus() * s.mor().dist(other.mor())).abs());
}

/// `v · diag(1/σ) · u†` for an invertible square matrix.
fn inverse(m: &Matrix) -> Option<Matrix> {
    let dec = svd(m);
    if dec.sigma.len() != m.rows() || dec.sigma.iter().any(|&s| s <= 1e-12) {
        return None;
    }
    let inv: Vec<f64> = dec.sigma.iter().map(|s| 1.0 / s).collect();
    Some(
        dec.v
            .matmul(&Matrix::diag_real(m.field(), &inv))
            .matmul(&dec.u.adjoint()),
    )
}

fn dagger_isomorphisms(t: &mut Trial, g: &mut Gen) {
    let n = g.dim();
    let mut u = g.unitary(n);
    if t.mutate() {
        let mut d = vec![1.0; n];
        d[n - 1] = 0.5;
        u = ConMor::from_matrix_unchecked(u.mat().matmul(&Matrix::diag_real(g.field(), &d)));
    }
    t.absorb(u.mat());
    let Some(inv) = inverse(u.mat()) else {
        t.require(false);
        return;
    };
    // an isomorphism of Con has its inverse in Con
    let con = t.tols().con;
    t.residual((inv.opnorm() - 1.0).max(0.0), con);
    t.eq(inv.dist(&u.mat().adjoint()));
    t.ortho(u.mor().unitary_residual());

    // a split mono with a contractive retraction is an isometry
    let d = g.dim();
    let c = g.range(d, g.dim_max());
    let m = if g.uniform() < 0.5 {
        g.isometry(d, c)
    } else {
        g.injective(d, c)
    };
    let Some(m) = t.attempt(m) else {
        return;
    };
    t.absorb(m.mat());
    let dec = svd(m.mat());
    let smallest = dec.sigma.last().copied().unwrap_or(1.0);
    let retraction_norm = 1.0 / smallest;
    let ortho = t.tols().ortho;
    t.require((retraction_norm <= 1.0 + con) == (m.mor().isometry_residual() <= ortho));
}

fn dagger_mono_extraction_check(t: &mut Trial, g: &mut Gen) {
    let z = g.scalar(0.05, 1.0);
    let d = g.dim();
    let c = g.range(d, g.dim_max());
    let Some(mut s0) = t.attempt(g.isometry(d, c)) else {
        return;
    };
    if t.mutate() {
        let mut m = s0.mat().clone();
        for i in 0..c {
            m.set(i, 0, m.get(i, 0) * 0.5);
        }
        s0 = ConMor::from_matrix_unchecked(m);
    }
    t.absorb(s0.mat());
    let Some(tm) = t.attempt(s0.scaled(&z)) else {
        return;
    };
    let gram = Mor::from_matrix(tm.mat().adjoint().matmul(tm.mat()));
    let target =
        Mor::from_matrix(Matrix::identity(g.field(), d).scale_real(z.modulus() * z.modulus()));
    t.eq(rel_mor(&gram, &target));
    let Some(s) = t.attempt(dagger_mono_extraction(&tm, &z)) else {
        return;
    };
    t.ortho(s.mor().isometry_residual());
    if let Some(zs) = t.attempt(s.scaled(&z)) {
        t.eq(rel(&zs, &tm));
    }
}

fn scalar_disc(t: &mut Trial, g: &mut Gen) {
    let field = g.field();
    let i = HObj::unit(field);
    let proj = ConMor::id(i)
        .oplus(&ConMor::zero(i, i))
        .expect("same field");
    for n in 0..=10 {
        let z = n as f64 / 10.0;
        let v = if t.mutate() {
            Matrix::from_reals(field, 2, 1, &[z, 1.0 - z])
        } else {
            let Some(c) = t.attempt(crate::concat::scalar_as_compression(field, z)) else {
                continue;
            };
            t.residual(c.residual, 1e-12);
            c.v.mat().clone()
        };
        t.absorb(&v);
        let value = v.adjoint().matmul(proj.mat()).matmul(&v).get(0, 0);
        t.residual((value - Complex64::new(z, 0.0)).norm(), 1e-12);
        t.ortho(v.isometry_residual());
    }
    // unit scalars are isometries
    let phase = g.scalar(1.0, 1.0);
    if let Some(p) = t.attempt(ConMor::scalar(&phase)) {
        t.ortho(p.mor().unitary_residual());
    }
    // powers of |z| = 1.2 leave the unit disc, so no contraction realizes them
    for n in 1..=10 {
        let zn = Scalar::new(field, Complex64::new(1.2f64.powi(n), 0.0));
        t.require(zn.modulus() > 1.0 && ConMor::scalar(&zn).is_err());
    }
}

fn scalar_chain_colimit(t: &mut Trial, g: &mut Gen) {
    let base = g.obj();
    let Some(dyadic) = t.attempt(ChainSpec::dyadic(base, DEFAULT_CHAIN_DEPTH)) else {
        return;
    };
    // a random chain with a random supremum
    let depth = g.range(1, 10);
    let mut zs: Vec<f64> = (0..depth).map(|_| 0.05 + 0.95 * g.uniform()).collect();
    zs.sort_by(f64::total_cmp);
    zs.dedup();
    let last = *zs.last().expect("depth ≥ 1");
    let sup = last + (1.0 - last) * g.uniform();
    let Some(random) = t.attempt(ChainSpec::new(base, zs, sup)) else {
        return;
    };

    for spec in [dyadic, random] {
        let Some(mut cocone) = t.attempt(scalar_chain_cocone(&spec)) else {
            continue;
        };
        if t.mutate() {
            cocone.legs[0] = rescale(&cocone.legs[0], 0.5);
        }
        for (leg, z) in cocone.legs.iter().zip(&spec.scalars) {
            let want = z / spec.sup;
            let err = (leg.mat().get(0, 0) - Complex64::new(want, 0.0)).norm();
            if spec.sup == 1.0 {
                t.residual(err, 0.0);
            } else {
                t.eq(err);
            }
        }
        t.eq(cocone.cocone_residual());

        let cod = g.dim();

        let target = g.contraction(base.dim, cod);
        t.absorb(target.mat());
        let legs: Vec<ConMor> = spec.scalars.iter().map(|&z| rescale(&target, z)).collect();
        let Some(u) = t.attempt(cocone.mediate(&legs)) else {
            continue;
        };
        let sup = Scalar::new(g.field(), Complex64::new(spec.sup, 0.0));
        if let Some(want) = t.attempt(target.scaled(&sup)) {
            t.eq(rel(&u, &want));
        }
        // any other mediator is pinned down by a single leg
        for (n, z) in spec.scalars.iter().enumerate() {
            let lifted = rescale(&legs[n], spec.sup / z);
            t.eq(rel(&lifted, &u));
        }
    }
}

fn russo_dye_check(t: &mut Trial, g: &mut Gen) {
    if g.field() == Field::Real {
        t.skip("averages of two real orthogonal maps do not reach every real contraction");
        return;
    }
    let n = g.dim();
    let tm = g.contraction(n, n);
    t.absorb(tm.mat());
    let Some(mut rd) = t.attempt(russo_dye(tm.mor())) else {
        return;
    };
    if t.mutate() {
        rd.u2 = rd.u1.clone();
    }
    t.recon(rd.residual(tm.mor()));
    t.ortho(rd.u1.mor().unitary_residual());
    t.ortho(rd.u2.mor().unitary_residual());

    let h = HObj::new(g.field(), n);
    for k in 1..=3 {
        let parts: Vec<ConMor> = (0..k).map(|_| g.contraction(n, n)).collect();
        let mean = parts
            .iter()
            .fold(Matrix::zeros(g.field(), n, n), |acc, p| &acc + p.mat())
            .scale_real(1.0 / k as f64);
        if let Some(avg) = t.attempt(compress_average(&parts)) {
            t.ortho(avg.mat().dist(&mean));
        }
        if let Some(w) = t.attempt(averaging_compression(k, h)) {
            t.ortho(w.mor().isometry_residual());
        }
    }
}
