//! Subobjects of I are ordered like the unit interval.

use daghilb::concat::{subobject_class, subobject_factor, ConMor, HObj};
use daghilb::numkernel::{Field, Matrix};

fn main() -> daghilb::Result<()> {
    let field = Field::Real;
    let mono = |x: f64| ConMor::from_matrix(Matrix::from_reals(field, 1, 1, &[x]));
    let monos = [
        ConMor::zero(HObj::new(field, 0), HObj::unit(field)),
        mono(-0.25)?,
        mono(0.5)?,
        mono(1.0)?,
    ];
    for m in &monos {
        print!("{:>5}", subobject_class(m)?);
        for other in &monos {
            let f = subobject_factor(m, other)?;
            print!("  {:>5}", if f.is_some() { "≤" } else { "·" });
        }
        println!();
    }
    Ok(())
}
