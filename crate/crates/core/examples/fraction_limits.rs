//! Equalisers, kernels and biproducts among fractions.

use daghilb::axiomsuite::{Gen, GenConfig};
use daghilb::concat::ConMor;
use daghilb::fractions::{
    frac_equalizer, frac_kernel_completion, frac_pair, frac_projections, Fraction,
};
use daghilb::numkernel::Scalar;

fn main() -> daghilb::Result<()> {
    let mut g = Gen::new(&GenConfig::default(), "example", 2);
    let field = g.field();

    // f and g differ by a rank-one map, so they agree on a hyperplane.
    let a = g.contraction(4, 3);
    let d = g.low_rank(4, 3, 1);
    let z = Scalar::new(field, 0.5.into());
    let f = Fraction::new(ConMor::from_matrix(a.mat().scale_real(0.5))?, z)?;
    let h = Fraction::new(ConMor::from_matrix((a.mat() + d.mat()).scale_real(0.5))?, z)?;
    let eq = frac_equalizer(&f, &h)?;
    println!(
        "equaliser of f, g has dimension {}",
        eq.inclusion().dom().dim
    );

    let cone = Fraction::new(eq.inclusion().compose(&g.contraction(2, 3))?, z)?;
    let m = eq.mediate(&cone)?;
    let back = eq.fraction().compose(&m)?;
    println!("e∘m vs cone: {:.2e}", back.eq_residual(&cone)?);

    let iso = g.isometry(2, 5)?;
    let kc = frac_kernel_completion(&iso)?;
    let s = kc.s().compose(&kc.kernel())?;
    println!("s∘ker s has norm {:.2e}", s.num().norm());

    let r = Fraction::embed(g.contraction(2, 3));
    let t = Fraction::embed(g.contraction(2, 1));
    let paired = frac_pair(&r, &t)?;
    let (p1, p2) = frac_projections(&paired, r.cod(), t.cod())?;
    println!("π₁∘⟨r,t⟩ vs r: {:.2e}", p1.eq_residual(&r)?);
    println!("π₂∘⟨r,t⟩ vs t: {:.2e}", p2.eq_residual(&t)?);
    Ok(())
}
