//! Every complex contraction is the average of two unitaries, and averages
//! are compressions of direct sums.

use daghilb::axiomsuite::{Gen, GenConfig};
use daghilb::concat::{compress_average, russo_dye};

fn main() -> daghilb::Result<()> {
    let mut g = Gen::new(&GenConfig::default(), "example", 1);
    let t = g.contraction(4, 4);
    let rd = russo_dye(t.mor())?;
    println!("‖t − (u1 + u2)/2‖ = {:.2e}", rd.residual(t.mor()));
    println!("u1 unitary to {:.2e}", rd.u1.mor().unitary_residual());
    println!("u2 unitary to {:.2e}", rd.u2.mor().unitary_residual());

    let avg = compress_average(&[rd.u1.clone(), rd.u2.clone()])?;
    println!("w†(u1 ⊕ u2)w vs t: {:.2e}", avg.mor().dist(t.mor()));
    Ok(())
}
