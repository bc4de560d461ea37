use super::{check_parallel, ConMor, HObj};
use crate::error::{Error, Result};
use crate::numkernel::TOL_EQ;

/// Compares `f` and `g`, both out of `H ⊗ K`, on all pure tensors `x ⊗ y` of
/// computational basis vectors. Returns whether they agree within `TOL_EQ`.
///
/// `f ∘ (e_a ⊗ e_b)` is column `a·dim K + b` of `f`, so in finite dimensions
/// this coincides with matrix equality.
pub fn separator_check(f: &ConMor, g: &ConMor, h: HObj, k: HObj) -> Result<bool> {
    check_parallel(f.mor(), g.mor())?;
    if f.dom() != h.tensor(&k) {
        return Err(Error::ShapeMismatch(format!(
            "domain {} is not {} ⊗ {}",
            f.dom(),
            h,
            k
        )));
    }
    let cod = f.cod().dim;
    for a in 0..h.dim {
        for b in 0..k.dim {
            let col = a * k.dim + b;
            let diff = (0..cod)
                .map(|i| (f.mat().get(i, col) - g.mat().get(i, col)).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if diff > TOL_EQ {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{Field, Matrix};

    #[test]
    fn equal_maps_pass_and_perturbed_fail() {
        let h = HObj::new(Field::Real, 2);
        let k = HObj::new(Field::Real, 2);
        let m = Matrix::from_real(1, 4, &[0.1, 0.2, 0.3, 0.4]);
        let f = ConMor::from_matrix(m.clone()).unwrap();
        assert!(separator_check(&f, &f, h, k).unwrap());
        let mut m2 = m;
        m2.set(0, 3, num_complex::Complex64::new(0.401, 0.0));
        let g = ConMor::from_matrix(m2).unwrap();
        assert!(!separator_check(&f, &g, h, k).unwrap());
    }

    #[test]
    fn rejects_wrong_tensor_split() {
        let f = ConMor::id(HObj::new(Field::Real, 4));
        let h = HObj::new(Field::Real, 3);
        assert!(separator_check(&f, &f, h, h).is_err());
    }
}
