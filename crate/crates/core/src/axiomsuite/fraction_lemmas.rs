//! Checks on the localisation at nonzero scalars.

use num_complex::Complex64;

use super::axioms::{column_perturbed_pair, rel_mor, rescale};
use super::{Gen, Trial};
use crate::colimits::{dagger_mono_chain_check, FiniteDiagram};
use crate::concat::{dagger_mono_extraction, ConMor, HObj, Mor};
use crate::error::Result;
use crate::fractions::{
    frac_equalizer, frac_kernel_completion, frac_pair, frac_projections, from_hilb,
    simplicity_witness, to_hilb, Fraction, SimplicityKind,
};
use crate::numkernel::{Matrix, Scalar};

fn fraction(g: &mut Gen, dom: usize, cod: usize) -> Fraction {
    let num = g.contraction(dom, cod);
    let den = g.scalar(0.05, 1.0);
    Fraction::new(num, den).expect("denominator in the disc")
}

/// `[x•t / x•z]` for a random nonzero `x`.
fn rescaled(g: &mut Gen, f: &Fraction) -> Fraction {
    let x = g.scalar(0.05, 1.0);
    let num = f.num().scaled(&x).expect("|x| ≤ 1");
    Fraction::new(num, f.den().mul(&x)).expect("nonzero product")
}

fn same(t: &mut Trial, a: &Fraction, b: &Fraction) {
    if let Some(r) = t.attempt(a.eq_residual(b)) {
        t.eq(r);
    }
}

fn absorb(t: &mut Trial, fs: &[&Fraction]) {
    for f in fs {
        t.absorb(f.num().mat());
        t.absorb_f64(f.den().re());
        t.absorb_f64(f.den().im());
    }
}

pub(super) fn congruence(t: &mut Trial, g: &mut Gen) {
    let (d, c, e, k) = (g.dim(), g.dim(), g.dim(), g.dim());
    let a = fraction(g, d, c);
    let b = fraction(g, c, e);
    let h = fraction(g, e, k);
    absorb(t, &[&a, &b, &h]);
    let a1 = if t.mutate() {
        let x = g.scalar(0.05, 0.95);
        Fraction::new(a.num().scaled(&x).expect("|x| < 1"), a.den()).expect("same denominator")
    } else {
        rescaled(g, &a)
    };
    let a2 = rescaled(g, &a1);
    let b1 = rescaled(g, &b);
    same(t, &a, &a);
    same(t, &a, &a1);
    same(t, &a1, &a);
    same(t, &a1, &a2);
    same(t, &a, &a2);

    let run = |t: &mut Trial| -> Result<()> {
        same(t, &b.compose(&a)?, &b1.compose(&a1)?);
        same(
            t,
            &h.compose(&b.compose(&a)?)?,
            &h.compose(&b)?.compose(&a)?,
        );
        same(t, &Fraction::id(a.cod()).compose(&a)?, &a);
        same(t, &a.compose(&Fraction::id(a.dom()))?, &a);
        Ok(())
    };
    let r = run(t);
    t.attempt(r);
}

pub(super) fn universal_property(t: &mut Trial, g: &mut Gen) {
    let mutate = t.mutate();
    let functor = |f: &Fraction| -> Mor {
        if mutate {
            f.num().mor().clone()
        } else {
            to_hilb(f)
        }
    };
    let (d, c, e) = (g.dim(), g.dim(), g.dim());
    let a = fraction(g, d, c);
    let b = fraction(g, c, e);
    absorb(t, &[&a, &b]);

    let run = |t: &mut Trial| -> Result<()> {
        let lhs = functor(&b.compose(&a)?);
        let rhs = functor(&b).compose(&functor(&a))?;
        t.eq(rel_mor(&lhs, &rhs));
        t.eq(rel_mor(&functor(&a.dagger()), &functor(&a).dagger()));
        let id = Fraction::id(a.dom());
        t.eq(rel_mor(&functor(&id), id.num().mor()));
        // [t/1] goes to t
        let embedded = Fraction::embed(a.num().clone());
        t.eq(rel_mor(&functor(&embedded), a.num().mor()));
        // nonzero scalars become invertible: [id/z] ∘ [z•id/1] ~ [id/1]
        let h = a.dom();
        let z = a.den();
        let inv = Fraction::inverse_scalar(h, z)?;
        let zid = Fraction::embed(ConMor::id(h).scaled(&z)?);
        let both = functor(&inv).compose(&functor(&zid))?;
        t.eq(rel_mor(&both, id.num().mor()));
        // [t/z] = [id/z] ∘ [t/1], so the functor is determined on embedded maps
        let split = Fraction::inverse_scalar(a.cod(), z)?.compose(&embedded)?;
        same(t, &split, &a);
        Ok(())
    };
    let r = run(t);
    t.attempt(r);
}

pub(super) fn localisation_equivalence(t: &mut Trial, g: &mut Gen) {
    let (d, c) = (g.dim(), g.dim());
    let base = g.contraction(d, c);
    let scale = 10.0 * g.uniform();
    let m = Mor::from_matrix(base.mat().scale_real(if base.norm() > 0.0 {
        scale / base.norm()
    } else {
        0.0
    }));
    t.absorb(m.mat());
    let f = if t.mutate() {
        let n = m.norm().max(1.0);
        Fraction::embed(rescale(
            &ConMor::from_matrix_unchecked(m.mat().clone()),
            1.0 / n,
        ))
    } else {
        match t.attempt(from_hilb(&m)) {
            Some(f) => f,
            None => return,
        }
    };
    let back = to_hilb(&f);
    t.recon(rel_mor(&back, &m));
    if let Some(again) = t.attempt(from_hilb(&back)) {
        same(t, &again, &f);
    }

    // faithfulness: frac_eq agrees with equality of images
    let a = fraction(g, d, c);
    let b = if g.uniform() < 0.5 {
        rescaled(g, &a)
    } else {
        fraction(g, d, c)
    };
    absorb(t, &[&a, &b]);
    let tol = t.tols().eq;
    if let Some(r) = t.attempt(a.eq_residual(&b)) {
        t.require((r <= tol) == (rel_mor(&to_hilb(&a), &to_hilb(&b)) <= tol));
    }
}

pub(super) fn monoidal(t: &mut Trial, g: &mut Gen) {
    let (d, c, d2, c2) = (g.small_dim(), g.small_dim(), g.small_dim(), g.small_dim());
    let a = fraction(g, d, c);
    let b = fraction(g, d2, c2);
    absorb(t, &[&a, &b]);
    let (a1, b1) = (rescaled(g, &a), rescaled(g, &b));
    let mutate = t.mutate();
    let run = |t: &mut Trial| -> Result<()> {
        let mut ab = a.tensor(&b)?;
        if mutate {
            ab = Fraction::new(ab.num().clone(), a.den())?;
        }
        same(t, &ab, &a1.tensor(&b1)?);
        let kron = Mor::from_matrix(to_hilb(&a).mat().kron(to_hilb(&b).mat()));
        t.eq(rel_mor(&to_hilb(&ab), &kron));
        same(t, &ab.dagger(), &a.dagger().tensor(&b.dagger())?);
        let sum = a.oplus(&b)?;
        same(t, &sum, &a1.oplus(&b1)?);
        let block = Mor::from_matrix(to_hilb(&a).mat().block_diag(to_hilb(&b).mat()));
        t.eq(rel_mor(&to_hilb(&sum), &block));
        Ok(())
    };
    let r = run(t);
    t.attempt(r);
}

pub(super) fn dagger(t: &mut Trial, g: &mut Gen) {
    let (d, c) = (g.dim(), g.dim());
    let a = fraction(g, d, c);
    absorb(t, &[&a]);
    same(t, &a.dagger().dagger(), &a);
    t.eq(rel_mor(&to_hilb(&a.dagger()), &to_hilb(&a).dagger()));

    // [z•s / z] is a dagger mono exactly when s is an isometry
    let c = g.range(d, g.dim_max());
    let Some(mut s) = t.attempt(g.isometry(d, c)) else {
        return;
    };
    if t.mutate() {
        s = rescale(&s, 0.9);
    }
    t.absorb(s.mat());
    let z = g.scalar(0.05, 1.0);
    let run = |t: &mut Trial| -> Result<()> {
        let tz = s.scaled(&z)?;
        let f = Fraction::new(tz.clone(), z)?;
        same(t, &f.dagger().compose(&f)?, &Fraction::id(f.dom()));
        same(t, &f, &Fraction::embed(s.clone()));
        let back = dagger_mono_extraction(&tz, &z)?;
        same(t, &Fraction::embed(back), &f);
        Ok(())
    };
    let r = run(t);
    t.attempt(r);

    // an injective non-isometry is not a dagger mono
    let Some(inj) = t.attempt(g.injective(d, c)) else {
        return;
    };
    t.absorb(inj.mat());
    let f = Fraction::embed(inj);
    let tol = t.tols().eq;
    if let Some(gram) = t.attempt(f.dagger().compose(&f)) {
        if let Some(r) = t.attempt(gram.eq_residual(&Fraction::id(f.dom()))) {
            t.require(r > tol);
        }
    }
}

pub(super) fn simple(t: &mut Trial, g: &mut Gen) {
    let field = g.field();
    let i = HObj::unit(field);
    let s = g.scalar(0.05, 1.0);
    let z = g.scalar(0.05, 1.0);
    let Some(sm) = t.attempt(ConMor::scalar(&s)) else {
        return;
    };
    let Some(f) = t.attempt(Fraction::new(sm, z)) else {
        return;
    };
    absorb(t, &[&f]);
    let Some(w) = t.attempt(simplicity_witness(&f)) else {
        return;
    };
    t.require(w.kind == SimplicityKind::Maximal);
    let Some(mut r) = w.retraction else {
        t.require(false);
        return;
    };
    if t.mutate() {
        r = Fraction::new(rescale(r.num(), 0.5), r.den()).expect("same denominator");
    }
    if let Some(back) = t.attempt(f.compose(&r)) {
        same(t, &back, &Fraction::id(i));
    }

    let empty = Fraction::zero(HObj::zero(field), i);
    if let Some(w) = t.attempt(simplicity_witness(&empty)) {
        t.require(w.kind == SimplicityKind::Minimal);
    }
    if g.dim_max() >= 2 {
        let wide = fraction(g, 2, 1);
        t.require(simplicity_witness(&wide).is_err());
    }
}

pub(super) fn separator(t: &mut Trial, g: &mut Gen) {
    let field = g.field();
    let cap = g.dim_max().min(super::TENSOR_DIM_CAP);
    let h = g.small_obj();
    let k = if t.mutate() && cap >= 2 {
        let d = g.range(2, cap);
        HObj::new(field, d)
    } else {
        g.small_obj()
    };
    let l = g.dim();
    let base = g.contraction(h.dim * k.dim, l);
    let b = if t.mutate() {
        k.dim - 1
    } else {
        g.range(0, k.dim - 1)
    };
    let col = g.range(0, h.dim - 1) * k.dim + b;
    let (p, q) = column_perturbed_pair(&base, col);
    let z = g.scalar(0.05, 1.0);
    let f = Fraction::new(p, z).expect("denominator in the disc");
    let near = rescaled(g, &f);
    let far = Fraction::new(q, z).expect("denominator in the disc");
    absorb(t, &[&f, &near, &far]);

    let bs: Vec<usize> = if t.mutate() {
        vec![0]
    } else {
        (0..k.dim).collect()
    };
    let w = g.scalar(0.05, 1.0);
    let tol = t.tols().eq;
    let agree = |t: &mut Trial, x: &Fraction, y: &Fraction| -> Result<bool> {
        for a in 0..h.dim {
            for &bb in &bs {
                let mut v = Matrix::zeros(field, h.dim * k.dim, 1);
                v.set(a * k.dim + bb, 0, Complex64::new(1.0, 0.0));
                let probe = Fraction::new(ConMor::from_matrix(v)?, w)?;
                let r = x.compose(&probe)?.eq_residual(&y.compose(&probe)?)?;
                t.absorb_f64(r);
                if r > tol {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    for (other, equal) in [(&near, true), (&far, false)] {
        let verdict = agree(t, &f, other);
        if let Some(v) = t.attempt(verdict) {
            t.require(v == equal);
        }
        if let Some(r) = t.attempt(f.eq_residual(other)) {
            t.require((r <= tol) == equal);
        }
    }
}

pub(super) fn biproducts(t: &mut Trial, g: &mut Gen) {
    let (d, k, l) = (g.dim(), g.obj(), g.obj());
    let r = fraction(g, d, k.dim);
    let s = fraction(g, d, l.dim);
    absorb(t, &[&r, &s]);
    let mutate = t.mutate();
    let run = |t: &mut Trial| -> Result<()> {
        let second = if mutate {
            Fraction::new(rescale(s.num(), 0.5), s.den())?
        } else {
            s.clone()
        };
        let q = frac_pair(&r, &second)?;
        let (pl, pr) = frac_projections(&q, k, l)?;
        same(t, &pl, &r);
        same(t, &pr, &s);
        // the unique map with these projections, built in Hilb
        let (hr, hs) = (to_hilb(&r), to_hilb(&s));
        let stacked = Mor::from_matrix(hr.mat().vstack(hs.mat()));
        same(t, &from_hilb(&stacked)?, &q);
        t.eq(rel_mor(&to_hilb(&q), &stacked));
        let (inl, inr) = (
            Fraction::embed(ConMor::inl(k, l)),
            Fraction::embed(ConMor::inr(k, l)),
        );
        same(t, &inl.dagger().compose(&inl)?, &Fraction::id(k));
        same(t, &inr.dagger().compose(&inl)?, &Fraction::zero(k, l));
        let sum = r.dagger().oplus(&s.dagger())?;
        let block = Mor::from_matrix(hr.dagger().mat().block_diag(hs.dagger().mat()));
        t.eq(rel_mor(&to_hilb(&sum), &block));
        Ok(())
    };
    let res = run(t);
    t.attempt(res);
}

pub(super) fn equalisers(t: &mut Trial, g: &mut Gen) {
    let (d, c) = (g.dim(), g.dim());
    let rk = g.range(0, d - 1);
    let a = g.contraction(d, c);
    let diff = g.low_rank(d, c, rk);
    t.absorb_all(&[&a, &diff]);
    let half = rescale(&a, 0.5);
    let other = ConMor::from_matrix_unchecked((a.mat() + diff.mat()).scale_real(0.5));
    let z = g.scalar(0.05, 1.0);
    let Some(f) = t.attempt(Fraction::new(half, z)) else {
        return;
    };
    let f = rescaled(g, &f);
    let Some(gf) = t.attempt(Fraction::new(other, z)) else {
        return;
    };
    let gf = rescaled(g, &gf);
    let Some(eq) = t.attempt(frac_equalizer(&f, &gf)) else {
        return;
    };
    let mut e = eq.inclusion().clone();
    if t.mutate() {
        e = rescale(&e, 0.5);
    }
    t.ortho(e.mor().isometry_residual());
    let ef = Fraction::embed(e.clone());
    let dom = g.dim();
    let m0 = g.contraction(dom, e.dom().dim);
    let w = g.scalar(0.05, 1.0);
    let run = |t: &mut Trial| -> Result<()> {
        same(t, &f.compose(&ef)?, &gf.compose(&ef)?);
        let cone = Fraction::new(eq.inclusion().compose(&m0)?, w)?;
        let m = eq.mediate(&cone)?;
        same(t, &ef.compose(&m)?, &cone);
        let x = Scalar::new(w.field(), Complex64::new(0.5, 0.0));
        let cone2 = Fraction::new(cone.num().scaled(&x)?, w.mul(&x))?;
        let m2 = eq.mediate(&cone2)?;
        same(t, &m, &m2);
        Ok(())
    };
    let r = run(t);
    t.attempt(r);
}

pub(super) fn kernels(t: &mut Trial, g: &mut Gen) {
    let h = g.dim();
    let n = g.range(1, h);
    let Some(mut iso) = t.attempt(g.isometry(n, h)) else {
        return;
    };
    if t.mutate() {
        iso = rescale(&iso, 0.5);
    }
    t.absorb(iso.mat());
    let Some(kc) = t.attempt(frac_kernel_completion(&iso)) else {
        return;
    };
    let dom = g.dim();
    let m0 = g.contraction(dom, n);
    let z = g.scalar(0.05, 1.0);
    let run = |t: &mut Trial| -> Result<()> {
        let kernel = kc.kernel();
        let sk = kc.s().compose(&kernel)?;
        same(t, &sk, &Fraction::zero(sk.dom(), sk.cod()));
        let cone = Fraction::new(iso.compose(&m0)?, z)?;
        let m = kc.mediate(&cone)?;
        same(t, &kernel.compose(&m)?, &cone);
        let x = Scalar::new(z.field(), Complex64::new(0.5, 0.0));
        let cone2 = Fraction::new(cone.num().scaled(&x)?, z.mul(&x))?;
        same(t, &kc.mediate(&cone2)?, &m);
        Ok(())
    };
    let r = run(t);
    t.attempt(r);
}

pub(super) fn colimits(t: &mut Trial, g: &mut Gen) {
    let nodes = g.range(2, 4);
    let mut dims: Vec<usize> = (0..nodes).map(|_| g.dim()).collect();
    dims.sort_unstable();
    let mut maps = Vec::new();
    for w in dims.windows(2) {
        match t.attempt(g.isometry(w[0], w[1])) {
            Some(m) => maps.push(m),
            None => return,
        }
    }
    if t.mutate() {
        maps[0] = rescale(&maps[0], 0.9);
    }
    for m in &maps {
        t.absorb(m.mat());
    }
    let Some(d) = t.attempt(FiniteDiagram::chain(maps)) else {
        return;
    };
    let Some(report) = t.attempt(dagger_mono_chain_check(&d)) else {
        return;
    };
    t.eq(report.adjoint_residual);
    t.ortho(report.leg_isometry_residual);
    t.require(report.pass);
}
