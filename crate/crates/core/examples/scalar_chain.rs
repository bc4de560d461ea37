//! The chain z_n = 1 − 2⁻ⁿ of scalings of I has colimit I with legs z_n.

use daghilb::colimits::{scalar_chain_cocone, ChainSpec};
use daghilb::concat::{ConMor, HObj};
use daghilb::numkernel::{Field, Scalar};

fn main() -> daghilb::Result<()> {
    let spec = ChainSpec::dyadic(HObj::unit(Field::Real), 50)?;
    let cocone = scalar_chain_cocone(&spec)?;
    for (n, leg) in cocone.legs.iter().enumerate().take(5) {
        println!("leg {}: {}", n + 1, leg.mat().get(0, 0).re);
    }
    println!("cocone residual {:.2e}", cocone.cocone_residual());

    // Any compatible cocone factors through the colimit.
    let target: Vec<ConMor> = spec
        .scalars
        .iter()
        .map(|z| ConMor::id(spec.base).scaled(&Scalar::real(0.25 * z)))
        .collect::<daghilb::Result<_>>()?;
    let u = cocone.mediate(&target)?;
    println!("mediator {}", u.mat().get(0, 0).re);
    Ok(())
}
