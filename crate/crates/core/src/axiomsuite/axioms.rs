use num_complex::Complex64;

use super::{CheckKind, CheckSpec, Gen, Trial};
use crate::colimits::DEFAULT_CHAIN_DEPTH;
use crate::colimits::{finite_colimit, scalar_chain_cocone, ChainSpec, FiniteDiagram};
use crate::concat::{
    cokernel, dagger_equalizer, dagger_kernel, equalizer_mediator, left_distributor, mixture,
    oplus_associator, oplus_braiding, oplus_left_unitor, oplus_right_unitor, positivity_witness,
    projector, right_distributor, separator_check, tensor_associator, tensor_braiding,
    tensor_left_unitor, tensor_right_unitor, ConMor, HObj, Mor,
};
use crate::numkernel::{rank, Matrix, Scalar};

pub(super) static REGISTRY: &[CheckSpec] = &[
    CheckSpec::new(
        "dagger",
        CheckKind::Axiom,
        "conjugate transpose is an involutive contravariant identity-on-objects functor",
        "adjoint with one entry moved by 1e-3",
        dagger,
    ),
    CheckSpec::new(
        "dagger-rig",
        CheckKind::Axiom,
        "structural isomorphisms unitary, distributors and braidings natural, dagger monoidal",
        "left distributor with two columns swapped",
        dagger_rig,
    ),
    CheckSpec::new(
        "zero-object",
        CheckKind::Axiom,
        "0 is initial and terminal; zero maps factor through it",
        "claimed zero map with a 0.5 entry",
        zero_object,
    ),
    CheckSpec::new(
        "jointly-epic",
        CheckKind::Axiom,
        "coproduct injections are jointly epic",
        "right injection replaced by zero",
        jointly_epic,
    ),
    CheckSpec::new(
        "mixture",
        CheckKind::Axiom,
        "s = (1/2, 1/2) has both components nonzero",
        "s = (1, 0)",
        mixture_check,
    )
    .exhaustive(),
    CheckSpec::new(
        "simple-unit",
        CheckKind::Axiom,
        "dagger monos into I are 0 or unitary, exhausting dimensions 0 and 1",
        "the scalar 0.5 claimed as a dagger mono",
        simple_unit,
    ),
    CheckSpec::new(
        "monoidal-separator",
        CheckKind::Axiom,
        "pure tensors of basis vectors separate maps out of H ⊗ K",
        "probe family restricted to x ⊗ e_0",
        separator,
    ),
    CheckSpec::new(
        "dagger-equalisers",
        CheckKind::Axiom,
        "null(f - g) is an isometric equaliser with unique mediators",
        "equaliser scaled by 0.9",
        equalisers,
    ),
    CheckSpec::new(
        "dagger-kernels",
        CheckKind::Axiom,
        "every isometry is the dagger kernel of its cokernel",
        "kernel scaled by 0.9",
        kernels,
    ),
    CheckSpec::new(
        "positivity",
        CheckKind::Axiom,
        "r r† = s s† gives a unitary t with r = s ∘ t",
        "r = s ∘ q with q of norm 1.01",
        positivity,
    ),
    CheckSpec::new(
        "directed-colimits",
        CheckKind::Axiom,
        "finite directed diagrams and scalar chains have mediating colimit cocones",
        "first colimit leg halved",
        directed_colimits,
    ),
];

/// `‖a − b‖ / max(1, ‖a‖, ‖b‖)`, or infinity for unequal shapes.
pub(super) fn rel(a: &ConMor, b: &ConMor) -> f64 {
    rel_mor(a.mor(), b.mor())
}

pub(super) fn rel_mor(a: &Mor, b: &Mor) -> f64 {
    if a.dom() != b.dom() || a.cod() != b.cod() {
        return f64::INFINITY;
    }
    a.rel_dist(b)
}

/// `x • t` without the admission check, for corrupted instances.
pub(super) fn rescale(t: &ConMor, x: f64) -> ConMor {
    let m = t.mat().scale_real(x);
    ConMor::new_unchecked(Mor::new(t.dom(), t.cod(), m).expect("same shape"))
}

pub(super) fn compose(t: &mut Trial, g: &ConMor, f: &ConMor) -> Option<ConMor> {
    t.attempt(g.compose(f))
}

fn obj(g: &Gen, d: usize) -> HObj {
    HObj::new(g.field(), d)
}

fn dagger(t: &mut Trial, g: &mut Gen) {
    let (d, c, e) = (g.dim(), g.dim(), g.dim());
    let f = g.contraction(d, c);
    let h = g.contraction(c, e);
    t.absorb_all(&[&f, &h]);

    let mut fd = f.dagger();
    if t.mutate() {
        let mut m = fd.mat().clone();
        m.set(0, 0, m.get(0, 0) + Complex64::new(1e-3, 0.0));
        fd = ConMor::from_matrix_unchecked(m);
    }
    // ⟨f e_j, e_i⟩ = ⟨e_j, f† e_i⟩ entrywise
    let mut adj = 0f64;
    for i in 0..c {
        for j in 0..d {
            adj = adj.max((f.mat().get(i, j) - fd.mat().get(j, i).conj()).norm());
        }
    }
    t.eq(adj);
    t.eq(rel(&fd.dagger(), &f));
    let id = ConMor::id(obj(g, d));
    t.eq(rel(&id.dagger(), &id));
    if let Some(hf) = compose(t, &h, &f) {
        if let Some(rhs) = compose(t, &fd, &h.dagger()) {
            t.eq(rel(&hf.dagger(), &rhs));
        }
    }
}

fn dagger_rig(t: &mut Trial, g: &mut Gen) {
    let [h, k, l, h2, k2, l2] = [(); 6].map(|_| g.small_obj());
    for iso in [
        tensor_left_unitor(h),
        tensor_right_unitor(h),
        tensor_associator(h, k, l),
        tensor_braiding(h, k),
        oplus_left_unitor(h),
        oplus_right_unitor(h),
        oplus_associator(h, k, l),
        oplus_braiding(h, k),
        left_distributor(h, k, l),
        right_distributor(h, k, l),
    ] {
        t.ortho(iso.mor().unitary_residual());
    }

    let f = g.contraction(h.dim, h2.dim);
    let p = g.contraction(k.dim, k2.dim);
    let q = g.contraction(l.dim, l2.dim);
    t.absorb_all(&[&f, &p, &q]);

    let run = |t: &mut Trial| -> crate::error::Result<()> {
        let mut delta = left_distributor(h, k, l);
        if t.mutate() {
            let n = delta.dom().dim;
            let mut cols: Vec<usize> = (0..n).collect();
            cols.swap(0, n - 1);
            delta = ConMor::from_matrix_unchecked(delta.mat().select_columns(&cols));
        }
        let lhs = left_distributor(h2, k2, l2).compose(&f.tensor(&p.oplus(&q)?)?)?;
        let rhs = f.tensor(&p)?.oplus(&f.tensor(&q)?)?.compose(&delta)?;
        t.eq(rel(&lhs, &rhs));

        let lhs = right_distributor(h2, k2, l2).compose(&f.oplus(&p)?.tensor(&q)?)?;
        let rhs = f
            .tensor(&q)?
            .oplus(&p.tensor(&q)?)?
            .compose(&right_distributor(h, k, l))?;
        t.eq(rel(&lhs, &rhs));

        let lhs = tensor_braiding(h2, k2).compose(&f.tensor(&p)?)?;
        let rhs = p.tensor(&f)?.compose(&tensor_braiding(h, k))?;
        t.eq(rel(&lhs, &rhs));

        let lhs = oplus_braiding(h2, k2).compose(&f.oplus(&p)?)?;
        let rhs = p.oplus(&f)?.compose(&oplus_braiding(h, k))?;
        t.eq(rel(&lhs, &rhs));

        let lhs = tensor_associator(h2, k2, l2).compose(&f.tensor(&p)?.tensor(&q)?)?;
        let rhs = f
            .tensor(&p.tensor(&q)?)?
            .compose(&tensor_associator(h, k, l))?;
        t.eq(rel(&lhs, &rhs));

        t.eq(rel(
            &f.tensor(&p)?.dagger(),
            &f.dagger().tensor(&p.dagger())?,
        ));
        t.eq(rel(&f.oplus(&p)?.dagger(), &f.dagger().oplus(&p.dagger())?));
        Ok(())
    };
    let r = run(t);
    t.attempt(r);
}

fn zero_object(t: &mut Trial, g: &mut Gen) {
    let (h, k) = (g.obj(), g.obj());
    let zero = HObj::zero(g.field());
    let from0 = ConMor::zero(zero, k);
    let to0 = ConMor::zero(h, zero);
    // the only matrices out of and into 0 are empty
    t.require(from0.mat().data().is_empty() && to0.mat().data().is_empty());

    let f = g.contraction(h.dim, k.dim);
    t.absorb(f.mat());
    let Some(through) = compose(t, &from0, &to0) else {
        return;
    };
    let mut claimed = ConMor::zero(h, k);
    if t.mutate() {
        let mut m = claimed.mat().clone();
        m.set(0, 0, Complex64::new(0.5, 0.0));
        claimed = ConMor::from_matrix_unchecked(m);
    }
    t.eq(rel(&claimed, &through));
    if let Some(fz) = compose(t, &f, &ConMor::zero(zero, h)) {
        t.eq(rel(&fz, &from0));
    }
    t.ortho(oplus_right_unitor(h).mor().unitary_residual());
}

fn jointly_epic(t: &mut Trial, g: &mut Gen) {
    let (h, k, l) = (g.obj(), g.obj(), g.dim());
    let i1 = ConMor::inl(h, k);
    let i2 = if t.mutate() {
        ConMor::zero(k, h.oplus(&k))
    } else {
        ConMor::inr(h, k)
    };
    let a = g.contraction(h.dim + k.dim, l);
    t.absorb(a.mat());
    t.require(rank(&i1.mat().hstack(i2.mat())) == h.dim + k.dim);
    let (Some(a1), Some(a2)) = (compose(t, &a, &i1), compose(t, &a, &i2)) else {
        return;
    };
    // a is determined by its restrictions along the injections
    let rebuilt = ConMor::from_matrix_unchecked(a1.mat().hstack(a2.mat()));
    t.eq(rel(&rebuilt, &a));
}

fn mixture_check(t: &mut Trial, g: &mut Gen) {
    let field = g.field();
    let s = if t.mutate() {
        ConMor::from_matrix_unchecked(Matrix::from_reals(field, 2, 1, &[1.0, 0.0]))
    } else {
        mixture(field)
    };
    t.absorb(s.mat());
    let i = HObj::unit(field);
    let rank_tol = t.tols().rank;
    for inj in [ConMor::inl(i, i), ConMor::inr(i, i)] {
        if let Some(c) = compose(t, &inj.dagger(), &s) {
            t.require(c.mat().get(0, 0).norm() > rank_tol);
        }
    }
    let con = t.tols().con;
    t.residual((s.norm() - 1.0).max(0.0), con);
}

fn simple_unit(t: &mut Trial, g: &mut Gen) {
    let field = g.field();
    let i = HObj::unit(field);
    // dimension 0: the unique map is a dagger mono, the least subobject
    let empty = ConMor::zero(HObj::zero(field), i);
    t.ortho(empty.mor().isometry_residual());

    // dimension 1: a dagger mono is a unit scalar, hence unitary
    let phase = g.scalar(1.0, 1.0);
    let w = if t.mutate() {
        Scalar::new(field, phase.value() * 0.5)
    } else {
        phase
    };
    let Some(m) = t.attempt(ConMor::scalar(&w)) else {
        return;
    };
    t.absorb(m.mat());
    t.ortho(m.mor().isometry_residual());
    t.ortho(m.mor().unitary_residual());

    // dimension ≥ 2 admits no dagger mono into I
    if g.dim_max() >= 2 {
        let d = g.range(2, g.dim_max());
        let f = g.contraction(d, 1);
        t.require(f.mor().isometry_residual() >= 1.0 - 1e-12);
    }
}

/// Compares `f` and `g` on `e_a ⊗ e_b` for the listed `b`.
fn probes_agree(f: &ConMor, gm: &ConMor, h: HObj, k: HObj, bs: &[usize], tol: f64) -> bool {
    let cod = f.cod().dim;
    (0..h.dim).all(|a| {
        bs.iter().all(|&b| {
            let col = a * k.dim + b;
            let d2: f64 = (0..cod)
                .map(|i| (f.mat().get(i, col) - gm.mat().get(i, col)).norm_sqr())
                .sum();
            d2.sqrt() <= tol
        })
    })
}

/// Halves `t`, and returns it with a copy whose column `col` moved by 1/8.
pub(super) fn column_perturbed_pair(t: &ConMor, col: usize) -> (ConMor, ConMor) {
    let half = rescale(t, 0.5);
    let mut m = half.mat().clone();
    m.set(0, col, m.get(0, col) + Complex64::new(0.125, 0.0));
    (half, ConMor::from_matrix_unchecked(m))
}

fn separator(t: &mut Trial, g: &mut Gen) {
    let cap = g.dim_max().min(super::TENSOR_DIM_CAP);
    let h = g.small_obj();
    let k = if t.mutate() && cap >= 2 {
        let d = g.range(2, cap);
        obj(g, d)
    } else {
        g.small_obj()
    };
    let l = g.dim();
    let f = g.contraction(h.dim * k.dim, l);
    t.absorb(f.mat());
    let b = if t.mutate() {
        k.dim - 1
    } else {
        g.range(0, k.dim - 1)
    };
    let col = g.range(0, h.dim - 1) * k.dim + b;
    let (f2, g2) = column_perturbed_pair(&f, col);
    let tol = t.tols().eq;

    let sep = |t: &mut Trial, x: &ConMor, y: &ConMor| -> Option<bool> {
        if t.mutate() {
            Some(probes_agree(x, y, h, k, &[0], tol))
        } else {
            t.attempt(separator_check(x, y, h, k))
        }
    };
    for (x, y, equal) in [(&f, &f, true), (&f2, &g2, false)] {
        if let Some(agree) = sep(t, x, y) {
            t.require(agree == equal);
            t.require((rel(x, y) <= tol) == equal);
        }
    }
}

fn equalisers(t: &mut Trial, g: &mut Gen) {
    let (d, c) = (g.dim(), g.dim());
    let r = g.range(0, d - 1);
    let a = g.contraction(d, c);
    let diff = g.low_rank(d, c, r);
    t.absorb_all(&[&a, &diff]);
    let f = rescale(&a, 0.5);
    let gm = ConMor::from_matrix_unchecked((a.mat() + diff.mat()).scale_real(0.5));

    let Some(mut e) = t.attempt(dagger_equalizer(&f, &gm)) else {
        return;
    };
    if t.mutate() {
        e = rescale(&e, 0.9);
    }
    t.ortho(e.mor().isometry_residual());
    t.require(e.dom().dim + rank(&(f.mat() - gm.mat())) == d);
    let (Some(fe), Some(ge)) = (compose(t, &f, &e), compose(t, &gm, &e)) else {
        return;
    };
    t.eq(rel(&fe, &ge));

    let dom = g.dim();

    let m0 = g.contraction(dom, e.dom().dim);
    let Some(cone) = compose(t, &e, &m0) else {
        return;
    };
    let Some(m) = t.attempt(equalizer_mediator(&e, &f, &gm, &cone)) else {
        return;
    };
    if let Some(em) = compose(t, &e, &m) {
        t.eq(rel(&em, &cone));
    }
}

fn kernels(t: &mut Trial, g: &mut Gen) {
    let h = g.dim();
    let n = g.range(1, h);
    let Some(m) = t.attempt(g.isometry(n, h)) else {
        return;
    };
    t.absorb(m.mat());
    let s = cokernel(&m);
    if let Some(sm) = compose(t, &s, &m) {
        t.eq(sm.norm());
    }
    let mut k = dagger_kernel(&s);
    if t.mutate() {
        k = rescale(&k, 0.9);
    }
    t.ortho(k.mor().isometry_residual());
    t.ortho(projector(&k).dist(&projector(&m)));
    // m and k are both kernels of s, related by the unitary k† m
    if let Some(u) = compose(t, &k.dagger(), &m) {
        t.ortho(u.mor().unitary_residual());
        if let Some(ku) = compose(t, &k, &u) {
            t.eq(rel(&ku, &m));
        }
    }
}

fn positivity(t: &mut Trial, g: &mut Gen) {
    let d = g.dim();
    let c = g.range(d, g.dim_max());
    let Some(s) = t.attempt(g.injective(d, c)) else {
        return;
    };
    let mut q = g.unitary(d);
    t.absorb_all(&[&s, &q]);
    if t.mutate() {
        q = rescale(&q, 1.01);
    }
    let r = ConMor::from_matrix_unchecked(s.mat().matmul(q.mat()));
    let rr = Mor::from_matrix(r.mat().matmul(&r.mat().adjoint()));
    let ss = Mor::from_matrix(s.mat().matmul(&s.mat().adjoint()));
    t.eq(rel_mor(&rr, &ss));
    let Some(w) = t.attempt(positivity_witness(&r, &s)) else {
        return;
    };
    t.ortho(w.mor().unitary_residual());
    if let Some(sw) = compose(t, &s, &w) {
        t.eq(rel(&sw, &r));
    }
}

fn directed_colimits(t: &mut Trial, g: &mut Gen) {
    // a chain of random contractions
    let nodes = g.range(2, 5);
    let dims: Vec<usize> = (0..nodes).map(|_| g.dim()).collect();
    let maps: Vec<ConMor> = dims.windows(2).map(|w| g.contraction(w[0], w[1])).collect();
    for m in &maps {
        t.absorb(m.mat());
    }
    let Some(d) = t.attempt(FiniteDiagram::chain(maps)) else {
        return;
    };
    let mut colim = finite_colimit(&d);
    if t.mutate() {
        colim.legs[0] = rescale(&colim.legs[0], 0.5);
    }
    t.eq(colim.cocone_residual(&d));
    let cod = g.dim();
    let u = g.contraction(colim.apex.dim, cod);
    t.absorb(u.mat());
    let cocone: crate::error::Result<Vec<ConMor>> =
        colim.legs.iter().map(|l| u.compose(l)).collect();
    if let Some(cocone) = t.attempt(cocone) {
        if let Some(m) = t.attempt(colim.mediate(&cocone)) {
            t.eq(rel(&m, &u));
        }
    }

    // the dyadic scalar chain with supremum 1
    let base = g.obj();
    let Some(spec) = t.attempt(ChainSpec::dyadic(base, DEFAULT_CHAIN_DEPTH)) else {
        return;
    };
    let Some(mut chain) = t.attempt(scalar_chain_cocone(&spec)) else {
        return;
    };
    if t.mutate() {
        chain.legs[0] = rescale(&chain.legs[0], 0.5);
    }
    t.eq(chain.cocone_residual());
    let cod = g.dim();
    let target = g.contraction(base.dim, cod);
    t.absorb(target.mat());
    let cocone: Vec<ConMor> = spec.scalars.iter().map(|&z| rescale(&target, z)).collect();
    if let Some(m) = t.attempt(chain.mediate(&cocone)) {
        t.eq(rel(&m, &target));
    }
}
