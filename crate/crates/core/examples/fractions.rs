//! Fractions [t/z] recover every bounded linear map, not only contractions.

use daghilb::concat::Mor;
use daghilb::fractions::{frac_eq, from_hilb, to_hilb, Fraction};
use daghilb::numkernel::{Field, Matrix, Scalar};

fn main() -> daghilb::Result<()> {
    // A map of norm 2 is not a morphism of contractions, but it is a fraction.
    let big = Mor::from_matrix(Matrix::from_reals(Field::Real, 1, 2, &[2.0, 0.0]));
    let f = from_hilb(&big)?;
    println!("[t/z] with t = {:?}, z = {}", f.num().mat(), f.den());
    println!("back to a map: {:?}", to_hilb(&f).mat());

    // 0.3/0.6 and 0.5/1 are the same fraction.
    let one = |x: f64| Mor::from_matrix(Matrix::from_reals(Field::Real, 1, 1, &[x]));
    let a = Fraction::new(one(0.3).try_into()?, Scalar::real(0.6))?;
    let b = Fraction::new(one(0.5).try_into()?, Scalar::real(1.0))?;
    println!("0.3/0.6 ~ 0.5/1: {}", frac_eq(&a, &b)?);

    let ab = a.compose(&b)?;
    println!(
        "composite [{}/{}] = {:?}",
        ab.num().mat().get(0, 0).re,
        ab.den(),
        to_hilb(&ab).mat()
    );
    Ok(())
}
