//! Structural isomorphisms of the two monoidal structures, materialized as
//! permutation matrices under the left-major Kronecker convention and the
//! block-diagonal direct sum.
//!
//! With these conventions the associators and unitors of both structures, and
//! the right distributor `(H ⊕ K) ⊗ L → (H ⊗ L) ⊕ (K ⊗ L)`, are identity
//! matrices; the braidings and the left distributor are genuine permutations.

use num_complex::Complex64;

use super::{ConMor, HObj, Mor};
use crate::numkernel::Matrix;

fn permutation(dom: HObj, cod: HObj, target: impl Fn(usize) -> usize) -> ConMor {
    debug_assert_eq!(dom.dim, cod.dim);
    let mut mat = Matrix::zeros(dom.field, cod.dim, dom.dim);
    for src in 0..dom.dim {
        mat.set(target(src), src, Complex64::new(1.0, 0.0));
    }
    ConMor::new_unchecked(Mor { dom, cod, mat })
}

/// `I ⊗ H → H`.
pub fn tensor_left_unitor(h: HObj) -> ConMor {
    permutation(HObj::unit(h.field).tensor(&h), h, |i| i)
}

/// `H ⊗ I → H`.
pub fn tensor_right_unitor(h: HObj) -> ConMor {
    permutation(h.tensor(&HObj::unit(h.field)), h, |i| i)
}

/// `(H ⊗ K) ⊗ L → H ⊗ (K ⊗ L)`.
pub fn tensor_associator(h: HObj, k: HObj, l: HObj) -> ConMor {
    permutation(h.tensor(&k).tensor(&l), h.tensor(&k.tensor(&l)), |i| i)
}

/// `H ⊗ K → K ⊗ H`: basis vector `a ⊗ b` goes to `b ⊗ a`.
pub fn tensor_braiding(h: HObj, k: HObj) -> ConMor {
    let (hd, kd) = (h.dim, k.dim);
    permutation(h.tensor(&k), k.tensor(&h), move |src| {
        let (a, b) = (src / kd, src % kd);
        b * hd + a
    })
}

/// `0 ⊕ H → H`.
pub fn oplus_left_unitor(h: HObj) -> ConMor {
    permutation(HObj::zero(h.field).oplus(&h), h, |i| i)
}

/// `H ⊕ 0 → H`.
pub fn oplus_right_unitor(h: HObj) -> ConMor {
    permutation(h.oplus(&HObj::zero(h.field)), h, |i| i)
}

/// `(H ⊕ K) ⊕ L → H ⊕ (K ⊕ L)`.
pub fn oplus_associator(h: HObj, k: HObj, l: HObj) -> ConMor {
    permutation(h.oplus(&k).oplus(&l), h.oplus(&k.oplus(&l)), |i| i)
}

/// `H ⊕ K → K ⊕ H`: swaps the two blocks.
pub fn oplus_braiding(h: HObj, k: HObj) -> ConMor {
    let (hd, kd) = (h.dim, k.dim);
    permutation(h.oplus(&k), k.oplus(&h), move |src| {
        if src < hd {
            kd + src
        } else {
            src - hd
        }
    })
}

/// `H ⊗ (K ⊕ L) → (H ⊗ K) ⊕ (H ⊗ L)`.
///
/// The source basis vector `h ⊗ j` with `j < dim K` lands on `h ⊗ j` in the
/// first block; with `j ≥ dim K` it lands on `h ⊗ (j − dim K)` in the second.
pub fn left_distributor(h: HObj, k: HObj, l: HObj) -> ConMor {
    let (hd, kd, ld) = (h.dim, k.dim, l.dim);
    let width = kd + ld;
    permutation(
        h.tensor(&k.oplus(&l)),
        h.tensor(&k).oplus(&h.tensor(&l)),
        move |src| {
            let (a, j) = (src / width, src % width);
            if j < kd {
                a * kd + j
            } else {
                hd * kd + a * ld + (j - kd)
            }
        },
    )
}

/// `(H ⊕ K) ⊗ L → (H ⊗ L) ⊕ (K ⊗ L)`.
pub fn right_distributor(h: HObj, k: HObj, l: HObj) -> ConMor {
    permutation(
        h.oplus(&k).tensor(&l),
        h.tensor(&l).oplus(&k.tensor(&l)),
        |i| i,
    )
}
