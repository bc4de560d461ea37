//! Run the randomized axiom and lemma checks and print a JSON report.

use daghilb::axiomsuite::{run_axioms, run_lemmas, GenConfig, Mode};
use daghilb::numkernel::Field;

fn main() -> daghilb::Result<()> {
    let cfg = GenConfig {
        field: Field::Real,
        trials: 50,
        ..GenConfig::default()
    };
    let axioms = run_axioms(&cfg, Mode::Honest)?;
    let lemmas = run_lemmas(&cfg, Mode::Honest)?;
    for r in axioms.checks.iter().chain(&lemmas.checks) {
        println!(
            "{:<26} {} {:.2e}",
            r.id,
            if r.pass { "pass" } else { "FAIL" },
            r.worst_residual.unwrap_or(f64::INFINITY)
        );
    }
    print!("{}", axioms.to_json_string());
    Ok(())
}
