//! The dagger rig structure: ⊗ and ⊕ coherence maps are unitary, and the
//! distributor relates them.

use daghilb::concat::{
    left_distributor, oplus_associator, oplus_braiding, tensor_associator, tensor_braiding, HObj,
};
use daghilb::numkernel::Field;

fn main() -> daghilb::Result<()> {
    let f = Field::Complex;
    let (h, k, l) = (HObj::new(f, 2), HObj::new(f, 3), HObj::new(f, 1));
    let maps = [
        ("tensor associator", tensor_associator(h, k, l)),
        ("tensor braiding", tensor_braiding(h, k)),
        ("oplus associator", oplus_associator(h, k, l)),
        ("oplus braiding", oplus_braiding(h, k)),
        ("left distributor", left_distributor(h, k, l)),
    ];
    for (name, m) in maps {
        println!(
            "{name:<18} {} -> {}  unitary to {:.1e}",
            m.dom(),
            m.cod(),
            m.mor().unitary_residual()
        );
    }
    Ok(())
}
