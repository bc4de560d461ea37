//! Randomized verification of the axioms and the constructive lemmas.
//!
//! Every check draws `trials` instances from a ChaCha8 stream keyed by the
//! check id, builds the witnesses the theory promises, and records the worst
//! residual. Trials run in parallel; results are folded in trial order, so a
//! report depends only on its [`GenConfig`].
//!
//! Each check also has a mutated mode that corrupts its instance (a norm-1.01
//! map, a non-isometric equaliser, a deficient probe family, ...). A sound
//! checker must fail there.

mod axioms;
mod fraction_lemmas;
mod gen;
mod lemmas;
mod trial;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::numkernel::{Field, Tolerances};

pub use gen::{stream_of, Gen, TENSOR_DIM_CAP};
pub use trial::Trial;

use trial::TrialOutcome;

/// Parameters of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenConfig {
    pub field: Field,
    pub dim_max: usize,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub tol_overrides: BTreeMap<String, f64>,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            field: Field::Complex,
            dim_max: 8,
            trials: 200,
            seed: 42,
            tol_overrides: BTreeMap::new(),
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim_max == 0 {
            return Err(Error::OutOfDomain("dim_max must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::OutOfDomain("trials must be at least 1".into()));
        }
        self.tolerances().map(|_| ())
    }

    /// Default tolerances with the overrides applied.
    pub fn tolerances(&self) -> Result<Tolerances> {
        let mut t = Tolerances::default();
        for (name, &v) in &self.tol_overrides {
            t.set(name, v).map_err(Error::OutOfDomain)?;
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Axiom,
    Lemma,
}

/// Whether instances are honest or deliberately corrupted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Honest,
    Mutated,
}

type CheckFn = fn(&mut Trial, &mut Gen);

/// A registered check.
pub struct CheckSpec {
    pub id: &'static str,
    pub kind: CheckKind,
    /// What the check verifies, one line.
    pub summary: &'static str,
    /// What the mutated mode corrupts.
    pub mutation: &'static str,
    /// Fixed trial count for exhaustive checks, otherwise `cfg.trials`.
    fixed_trials: Option<usize>,
    run: CheckFn,
}

impl CheckSpec {
    const fn new(
        id: &'static str,
        kind: CheckKind,
        summary: &'static str,
        mutation: &'static str,
        run: CheckFn,
    ) -> Self {
        Self {
            id,
            kind,
            summary,
            mutation,
            fixed_trials: None,
            run,
        }
    }

    const fn exhaustive(mut self) -> Self {
        self.fixed_trials = Some(1);
        self
    }

    pub fn trials(&self, cfg: &GenConfig) -> usize {
        self.fixed_trials.unwrap_or(cfg.trials)
    }
}

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub kind: CheckKind,
    pub pass: bool,
    /// `None` when a residual was not finite.
    pub worst_residual: Option<f64>,
    /// SHA-256 over the per-trial instance digests, in trial order.
    pub instance_digest: String,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// The outcome of a run: its configuration and one entry per check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub config: GenConfig,
    pub checks: Vec<CheckResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn worst_residual(&self) -> Option<f64> {
        self.checks
            .iter()
            .filter(|c| c.skipped.is_none())
            .map(|c| c.worst_residual.unwrap_or(f64::INFINITY))
            .reduce(f64::max)
            .filter(|w| w.is_finite())
    }

    /// JSON with keys sorted at every level.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
        s.push('\n');
        s
    }
}

/// All axiom checks, in the order the axioms are listed.
pub fn axioms() -> &'static [CheckSpec] {
    axioms::REGISTRY
}

/// All lemma checks.
pub fn lemmas() -> &'static [CheckSpec] {
    lemmas::REGISTRY
}

pub fn find(id: &str) -> Option<&'static CheckSpec> {
    axioms().iter().chain(lemmas()).find(|s| s.id == id)
}

/// Runs one check.
pub fn run_check(spec: &CheckSpec, cfg: &GenConfig, mode: Mode) -> Result<CheckResult> {
    cfg.validate()?;
    let tols = cfg.tolerances()?;
    let trials = spec.trials(cfg);
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|n| {
            let mut gen = Gen::new(cfg, spec.id, n as u64);
            let mut trial = Trial::new(tols, mode == Mode::Mutated);
            (spec.run)(&mut trial, &mut gen);
            trial.finish()
        })
        .collect();

    let mut hasher = Sha256::new();
    let mut worst = 0f64;
    let mut pass = true;
    let mut skipped = None;
    for o in &outcomes {
        hasher.update(o.digest);
        worst = worst.max(o.worst);
        pass &= o.pass;
        if skipped.is_none() {
            skipped.clone_from(&o.skipped);
        }
    }
    let digest: String = hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    Ok(CheckResult {
        id: spec.id.to_string(),
        kind: spec.kind,
        pass,
        worst_residual: worst.is_finite().then_some(worst),
        instance_digest: digest,
        trials,
        skipped,
    })
}

fn run_all(specs: &[CheckSpec], cfg: &GenConfig, mode: Mode) -> Result<AxiomReport> {
    let checks = specs
        .iter()
        .map(|s| run_check(s, cfg, mode))
        .collect::<Result<_>>()?;
    Ok(AxiomReport {
        config: cfg.clone(),
        checks,
    })
}

/// Every axiom check, in order.
pub fn run_axioms(cfg: &GenConfig, mode: Mode) -> Result<AxiomReport> {
    run_all(axioms(), cfg, mode)
}

/// Every lemma check, in order.
pub fn run_lemmas(cfg: &GenConfig, mode: Mode) -> Result<AxiomReport> {
    run_all(lemmas(), cfg, mode)
}

/// A single axiom check by id.
pub fn check_axiom(id: &str, cfg: &GenConfig) -> Result<CheckResult> {
    let spec = axioms()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::OutOfDomain(format!("unknown axiom `{id}`")))?;
    run_check(spec, cfg, Mode::Honest)
}

/// A single lemma check by id.
pub fn check_lemma(id: &str, cfg: &GenConfig) -> Result<CheckResult> {
    let spec = lemmas()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::OutOfDomain(format!("unknown lemma `{id}`")))?;
    run_check(spec, cfg, Mode::Honest)
}
