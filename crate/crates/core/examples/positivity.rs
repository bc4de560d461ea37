//! Two monos with the same positive part r∘r† = s∘s† differ by a unitary.

use daghilb::axiomsuite::{Gen, GenConfig};
use daghilb::concat::positivity_witness;

fn main() -> daghilb::Result<()> {
    let mut g = Gen::new(&GenConfig::default(), "example", 0);
    let s = g.injective(3, 5)?;
    let q = g.unitary(3);
    let r = s.compose(&q)?;

    let t = positivity_witness(&r, &s)?;
    println!("‖t − q‖      = {:.2e}", t.mor().dist(q.mor()));
    println!("‖r − s∘t‖    = {:.2e}", s.compose(&t)?.mor().dist(r.mor()));
    println!("unitarity    = {:.2e}", t.mor().unitary_residual());
    Ok(())
}
