//! Epi / dagger-mono factorisation of a contraction.

use daghilb::concat::{factor, ConMor};
use daghilb::numkernel::{Field, Matrix};

fn main() -> daghilb::Result<()> {
    #[rustfmt::skip]
    let t = ConMor::from_matrix(Matrix::from_reals(Field::Real, 2, 2, &[
        0.6, 0.0,
        0.8, 0.0,
    ]))?;
    let f = factor(&t);
    println!("image dimension {}", f.image().dim);
    println!("k = {:?}", f.k.mat());
    println!("e = {:?}", f.e.mat());

    let back = f.k.compose(&f.e)?;
    println!("‖k∘e − t‖ = {:.2e}", back.mor().dist(t.mor()));
    println!("‖k†k − I‖ = {:.2e}", f.k.mor().isometry_residual());
    Ok(())
}
