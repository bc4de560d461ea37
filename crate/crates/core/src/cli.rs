//! The `daghilb` command line.
//!
//! Exit codes: 0 on success, 1 when checks fail or an input is inadmissible
//! (a non-contraction, a non-functorial diagram), 2 on usage and parse errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::axiomsuite::{self, AxiomReport, CheckSpec, GenConfig, Mode};
use crate::colimits::{
    dagger_mono_chain_check, finite_colimit, scalar_chain_cocone, ChainSpec, DiagramJson,
    FiniteDiagram,
};
use crate::concat::{factor, factorization_residual, ConMor, Mor, MorJson};
use crate::error::Error;
use crate::fractions::{frac_eq, from_hilb, to_hilb, Fraction, FractionJson};
use crate::numkernel::{Field, Matrix, TOL_ORTHO};

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "DAGHILB_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "daghilb",
    version,
    about = "Finite-dimensional Hilbert spaces and contractions: constructions and randomized axiom checks"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Args)]
struct Opts {
    /// Base field, R or C.
    #[arg(long, global = true, default_value = "C")]
    field: Field,
    /// Largest sampled dimension.
    #[arg(long, global = true, default_value_t = 8)]
    dim_max: usize,
    /// Random instances per check.
    #[arg(long, global = true, default_value_t = 200)]
    trials: usize,
    /// Seed; the DAGHILB_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Override the morphism-equality tolerance.
    #[arg(long, global = true)]
    tol_eq: Option<f64>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run corrupted instances; succeed only if every check fails.
    #[arg(long, global = true)]
    expect_fail: bool,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Verify the eleven axioms on random instances.
    Axioms {
        /// Run a single check by id.
        #[arg(long)]
        only: Option<String>,
    },
    /// Verify the constructive lemmas on random instances.
    Lemmas {
        #[arg(long)]
        only: Option<String>,
    },
    /// List every check with what it verifies and how it is mutated.
    List,
    /// Factor a morphism as an epi followed by a dagger mono.
    Factor { path: PathBuf },
    /// Operate on fractions [t/z].
    Fraction {
        op: FracOp,
        #[arg(num_args = 1..=2, required = true)]
        paths: Vec<PathBuf>,
    },
    /// Colimit of a scalar chain or a finite diagram.
    Colimit { path: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FracOp {
    /// Whether two fractions are equivalent.
    Eq,
    /// `first ∘ second`.
    Compose,
    Dagger,
    /// The morphism `z⁻¹ t` of a fraction `[t/z]`.
    ToHilb,
    /// A fraction representing an arbitrary bounded morphism.
    FromHilb,
}

#[derive(Debug)]
enum Failure {
    /// Exit 1.
    Domain(String),
    /// Exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::ShapeMismatch(_) | Error::FieldMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    ok: bool,
}

/// Runs the process command line.
pub fn main() -> i32 {
    run(std::env::args_os())
}

/// Runs a command line and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli.opts, &out.text) {
                eprintln!("error: {e}");
                return 2;
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn emit(opts: &Opts, text: &str) -> std::io::Result<()> {
    match &opts.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let opts = &cli.opts;
    match &cli.cmd {
        Cmd::Axioms { only } => suite(opts, axiomsuite::axioms(), only.as_deref()),
        Cmd::Lemmas { only } => suite(opts, axiomsuite::lemmas(), only.as_deref()),
        Cmd::List => Ok(list(opts)),
        Cmd::Factor { path } => cmd_factor(opts, path),
        Cmd::Fraction { op, paths } => cmd_fraction(opts, *op, paths),
        Cmd::Colimit { path } => cmd_colimit(opts, path),
    }
}

fn config(opts: &Opts) -> Result<GenConfig, Failure> {
    let seed = match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{SEED_ENV}={s} is not a 64-bit seed")))?,
        Err(_) => opts.seed,
    };
    let mut cfg = GenConfig {
        field: opts.field,
        dim_max: opts.dim_max,
        trials: opts.trials,
        seed,
        ..GenConfig::default()
    };
    if let Some(t) = opts.tol_eq {
        cfg.tol_overrides.insert("tol_eq".into(), t);
    }
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn suite(opts: &Opts, specs: &[CheckSpec], only: Option<&str>) -> Result<Output, Failure> {
    let cfg = config(opts)?;
    let selected: Vec<&CheckSpec> = match only {
        Some(id) => {
            let s = specs
                .iter()
                .find(|s| s.id == id)
                .ok_or_else(|| Failure::Usage(format!("no check named `{id}`")))?;
            vec![s]
        }
        None => specs.iter().collect(),
    };
    let mode = if opts.expect_fail {
        Mode::Mutated
    } else {
        Mode::Honest
    };
    let checks = selected
        .into_iter()
        .map(|s| axiomsuite::run_check(s, &cfg, mode))
        .collect::<crate::error::Result<Vec<_>>>()?;
    let report = AxiomReport {
        config: cfg,
        checks,
    };
    let ok = if opts.expect_fail {
        report.checks.iter().all(|c| c.skipped.is_some() || !c.pass)
    } else {
        report.all_pass()
    };
    let text = if opts.json {
        report.to_json_string()
    } else {
        report_table(&report, opts.expect_fail)
    };
    Ok(Output { text, ok })
}

fn report_table(report: &AxiomReport, expect_fail: bool) -> String {
    let c = &report.config;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "field {}  dim_max {}  trials {}  seed {}{}",
        c.field,
        c.dim_max,
        c.trials,
        c.seed,
        if expect_fail {
            "  (mutated instances)"
        } else {
            ""
        }
    );
    let width = report
        .checks
        .iter()
        .map(|r| r.id.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let _ = writeln!(
        s,
        "{:<width$}  {:<6}  {:>14}  {:>6}  digest",
        "check", "result", "worst residual", "trials"
    );
    for r in &report.checks {
        let verdict = match (&r.skipped, r.pass) {
            (Some(_), _) => "skip",
            (None, true) => "pass",
            (None, false) => "FAIL",
        };
        let worst = match r.worst_residual {
            Some(w) => format!("{w:.3e}"),
            None => "non-finite".into(),
        };
        let _ = writeln!(
            s,
            "{:<width$}  {:<6}  {:>14}  {:>6}  {}",
            r.id,
            verdict,
            worst,
            r.trials,
            &r.instance_digest[..12]
        );
        if let Some(why) = &r.skipped {
            let _ = writeln!(s, "{:<width$}  skipped: {why}", "");
        }
    }
    let passed = report.checks.iter().filter(|r| r.pass).count();
    let _ = writeln!(s, "{passed}/{} passed", report.checks.len());
    s
}

fn list(opts: &Opts) -> Output {
    let specs: Vec<&CheckSpec> = axiomsuite::axioms()
        .iter()
        .chain(axiomsuite::lemmas())
        .collect();
    let text = if opts.json {
        let v: Vec<Value> = specs
            .iter()
            .map(|s| {
                json!({
                    "id": s.id,
                    "kind": s.kind,
                    "summary": s.summary,
                    "mutation": s.mutation,
                })
            })
            .collect();
        pretty(&Value::Array(v))
    } else {
        let width = specs.iter().map(|s| s.id.len()).max().unwrap_or(0);
        let mut s = String::new();
        for spec in specs {
            let kind = serde_json::to_value(spec.kind).expect("kind serializes");
            let _ = writeln!(
                s,
                "{:<width$}  {:<5}  {}",
                spec.id,
                kind.as_str().unwrap_or_default(),
                spec.summary
            );
        }
        s
    };
    Output { text, ok: true }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw)
        .map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("wire types serialize")
}

fn matrix_text(m: &Matrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("  ({}x{}, empty)\n", m.rows(), m.cols());
    }
    let mut s = String::new();
    for i in 0..m.rows() {
        s.push_str("  [");
        for j in 0..m.cols() {
            let z = m.get(i, j);
            match m.field() {
                Field::Real => {
                    let _ = write!(s, " {:>10.6}", z.re);
                }
                Field::Complex => {
                    let _ = write!(s, " {:>10.6}{:+.6}i", z.re, z.im);
                }
            }
        }
        s.push_str(" ]\n");
    }
    s
}

fn cmd_factor(opts: &Opts, path: &Path) -> Result<Output, Failure> {
    let j: MorJson = read_json(path)?;
    let t = ConMor::new(Mor::from_json(&j)?)?;
    let fac = factor(&t);
    let recon = fac.k.compose(&fac.e)?.mor().dist(t.mor());
    let iso = fac.k.mor().isometry_residual();
    let (_, rank_ok) = factorization_residual(&t, &fac);
    let text = if opts.json {
        pretty(&json!({
            "factorization": to_value(&fac.to_json()),
            "image_dim": fac.image().dim,
            "residuals": {
                "reconstruction": recon,
                "isometry": iso,
                "epi": rank_ok,
            },
        }))
    } else {
        format!(
            "image dimension {}\nreconstruction ‖k∘e − t‖ = {recon:.3e}\nisometry ‖k†k − I‖ = {iso:.3e}\ne epic: {rank_ok}\ne:\n{}k:\n{}",
            fac.image().dim,
            matrix_text(fac.e.mat()),
            matrix_text(fac.k.mat())
        )
    };
    Ok(Output { text, ok: true })
}

fn fraction_text(f: &Fraction) -> String {
    let z = f.den();
    format!(
        "[t/z] : {} -> {}\nz = {}{:+}i\nt:\n{}",
        f.dom().dim,
        f.cod().dim,
        z.re(),
        z.im(),
        matrix_text(f.num().mat())
    )
}

fn read_fraction(path: &Path) -> Result<Fraction, Failure> {
    let j: FractionJson = read_json(path)?;
    Ok(Fraction::from_json(&j)?)
}

fn cmd_fraction(opts: &Opts, op: FracOp, paths: &[PathBuf]) -> Result<Output, Failure> {
    let want = match op {
        FracOp::Eq | FracOp::Compose => 2,
        _ => 1,
    };
    if paths.len() != want {
        return Err(Failure::Usage(format!(
            "`{}` takes {want} input file(s), got {}",
            op.to_possible_value()
                .expect("no skipped variants")
                .get_name(),
            paths.len()
        )));
    }
    let (json, text) = match op {
        FracOp::Eq => {
            let (a, b) = (read_fraction(&paths[0])?, read_fraction(&paths[1])?);
            let equal = frac_eq(&a, &b)?;
            let r = a.eq_residual(&b)?;
            (
                json!({ "equal": equal, "residual": r }),
                format!("equal: {equal} (residual {r:.3e})\n"),
            )
        }
        FracOp::Compose => {
            let (g, f) = (read_fraction(&paths[0])?, read_fraction(&paths[1])?);
            let h = g.compose(&f)?;
            (to_value(&h.to_json()), fraction_text(&h))
        }
        FracOp::Dagger => {
            let f = read_fraction(&paths[0])?.dagger();
            (to_value(&f.to_json()), fraction_text(&f))
        }
        FracOp::ToHilb => {
            let m = to_hilb(&read_fraction(&paths[0])?);
            let text = format!(
                "{} -> {}, norm {:.6}\n{}",
                m.dom().dim,
                m.cod().dim,
                m.norm(),
                matrix_text(m.mat())
            );
            (to_value(&m.to_json()), text)
        }
        FracOp::FromHilb => {
            let j: MorJson = read_json(&paths[0])?;
            let f = from_hilb(&Mor::from_json(&j)?)?;
            (to_value(&f.to_json()), fraction_text(&f))
        }
    };
    let text = if opts.json { pretty(&json) } else { text };
    Ok(Output { text, ok: true })
}

fn cmd_colimit(opts: &Opts, path: &Path) -> Result<Output, Failure> {
    let v: Value = read_json(path)?;
    let is_chain = v.get("scalars").is_some();
    let bad =
        |e: serde_json::Error| Failure::Usage(format!("cannot parse {}: {e}", path.display()));
    if is_chain {
        let spec: ChainSpec = serde_json::from_value(v).map_err(bad)?;
        let cocone = scalar_chain_cocone(&spec)?;
        let legs: Vec<f64> = cocone.legs.iter().map(|l| l.mat().get(0, 0).re).collect();
        let residual = cocone.cocone_residual();
        let text = if opts.json {
            pretty(&json!({
                "kind": "chain",
                "apex": to_value(&spec.base),
                "legs": legs,
                "cocone_residual": residual,
            }))
        } else {
            let mut s = format!(
                "scalar chain of depth {} on dimension {}, sup {}\n{:>5}  {:>22}  {:>22}\n",
                spec.depth(),
                spec.base.dim,
                spec.sup,
                "n",
                "z_n",
                "leg z_n / sup"
            );
            for (n, (z, l)) in spec.scalars.iter().zip(&legs).enumerate() {
                let _ = writeln!(s, "{:>5}  {z:>22.17}  {l:>22.17}", n + 1);
            }
            let _ = writeln!(s, "cocone residual {residual:.3e}");
            s
        };
        return Ok(Output { text, ok: true });
    }

    let j: DiagramJson = serde_json::from_value(v).map_err(bad)?;
    let d = FiniteDiagram::from_json(&j)?;
    let colim = finite_colimit(&d);
    let residual = colim.cocone_residual(&d);
    let isometric = d
        .edges()
        .iter()
        .all(|e| e.map.mor().isometry_residual() <= TOL_ORTHO);
    let chain = if isometric {
        Some(dagger_mono_chain_check(&d)?)
    } else {
        None
    };
    let text = if opts.json {
        let legs: Vec<Value> = colim
            .legs
            .iter()
            .map(|l| to_value(&l.mor().to_json()))
            .collect();
        pretty(&json!({
            "kind": "diagram",
            "apex": to_value(&colim.apex),
            "top": d.top(),
            "legs": legs,
            "cocone_residual": residual,
            "dagger_mono_check": chain.as_ref().map(to_value),
        }))
    } else {
        let mut s = format!(
            "diagram with {} nodes, colimit at node {} (dimension {})\n",
            d.len(),
            d.top(),
            colim.apex.dim
        );
        for (i, leg) in colim.legs.iter().enumerate() {
            let _ = write!(s, "leg {i}:\n{}", matrix_text(leg.mat()));
        }
        let _ = writeln!(s, "cocone residual {residual:.3e}");
        if let Some(c) = &chain {
            let _ = writeln!(
                s,
                "isometric diagram: adjoint residual {:.3e}, leg isometry residual {:.3e}",
                c.adjoint_residual, c.leg_isometry_residual
            );
        }
        s
    };
    Ok(Output { text, ok: true })
}
