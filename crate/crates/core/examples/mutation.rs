//! Each checker rejects a deliberately corrupted instance.

use daghilb::axiomsuite::{axioms, lemmas, run_check, GenConfig, Mode};

fn main() -> daghilb::Result<()> {
    let cfg = GenConfig {
        trials: 10,
        ..GenConfig::default()
    };
    for spec in axioms().iter().chain(lemmas()) {
        let r = run_check(spec, &cfg, Mode::Mutated)?;
        println!(
            "{:<26} {:<6} {}",
            spec.id,
            if r.pass { "missed" } else { "caught" },
            spec.mutation
        );
    }
    Ok(())
}
