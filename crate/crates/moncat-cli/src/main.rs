//! `moncat`: check, skeletalize, complete, Day-convolve, and compare finite
//! monoidal categories stored as `.cat` (surface syntax) or `.cat.json`
//! (artifact envelope) files.
//!
//! Exit codes: 0 all checks passed, 1 a law or verification check failed,
//! 2 the input could not be read or elaborated, 3 a work bound was exceeded
//! (see `MONCAT_MAX_WORK`).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use moncat_core::day::{
    compare_day_vs_transport, day_tensor, representability_witness, CompletionError, PresheafIso,
};
use moncat_core::dsl::{self, ElabError, ElabModule};
use moncat_core::gen;
use moncat_core::json::{from_json, to_json, Artifact};
use moncat_core::laxmon::{
    check_lax_monoidal_functor, compose_lax_monoidal, enumerate_lax_monoidal, is_strong_monoidal,
    LaxMonoidalFunctor,
};
use moncat_core::monoidal::check_monoidal_laws;
use moncat_core::presheaf::{yoneda, Presheaf, SetFn};
use moncat_core::transport::{skeletalize, transport_monoidal, verify_precomp_equivalence};
use moncat_core::{Bounds, FinCat, Functor, MonoidalCategory, WorkLimit};

#[derive(Parser)]
#[command(name = "moncat", version, about = "finite monoidal category toolkit")]
struct Cli {
    /// Emit the run report as JSON on stdout (stable across runs).
    #[arg(long, global = true)]
    json: bool,
    /// Stop at the first failing check instead of collecting all of them.
    #[arg(long, global = true)]
    fail_fast: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every structure in FILE, or a generated corpus with --seed.
    Check {
        file: Option<PathBuf>,
        /// Check a generated corpus with this seed instead of a file.
        #[arg(long, conflicts_with = "file")]
        seed: Option<u64>,
    },
    /// Collapse isomorphic objects; write the weak equivalence to OUT.
    Skeletalize {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Transport the monoidal structure onto the skeleton; write it to OUT.
    Complete {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Day convolution over FILE's monoidal base: tensor two presheaves
    /// and verify representability on all object pairs.
    Day {
        file: PathBuf,
        /// Presheaf spec, twice or not at all: `y:OBJ` or `sizes:n,n,...`.
        #[arg(long = "presheaf")]
        presheaf: Vec<String>,
    },
    /// Verify that precomposition with the completion functor H: FILE ->
    /// skeleton is an equivalence onto lax monoidal functors into TARGET.
    Precomp {
        file: PathBuf,
        target: PathBuf,
        /// `auto`, or comma-separated .cat.json files holding lax functors
        /// skeleton -> TARGET.
        #[arg(long, value_delimiter = ',', default_value = "auto")]
        candidates: Vec<String>,
        /// Restrict the whiskering bijection to strong monoidal candidates.
        #[arg(long)]
        strong: bool,
        /// Cap on enumerated candidates (and generated comparison targets).
        #[arg(long, default_value_t = 5)]
        max_candidates: usize,
    },
    /// Cross-validate the skeletal completion against the Day-convolution
    /// completion on representables.
    Compare { file: PathBuf },
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Vec<String>,
    outcomes: Vec<Outcome>,
    timing_ms: Option<u128>,
    exit_status: u8,
}

#[derive(Serialize)]
struct Outcome {
    name: String,
    passed: bool,
    detail: Value,
}

impl Outcome {
    fn new(name: impl Into<String>, passed: bool, detail: Value) -> Self {
        Outcome { name: name.into(), passed, detail }
    }
}

/// A failure that aborts the run, sorted by exit code.
enum Failure {
    /// Exit 1: a structure elaborated but a law or verification failed.
    Law(String),
    /// Exit 2: the input itself is unusable.
    Input(String),
    /// Exit 3: a work bound was exceeded.
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Law(_) => 1,
            Failure::Input(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Law(_) => "law_failure",
            Failure::Input(_) => "input_error",
            Failure::Resource(_) => "work_limit",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Law(m) | Failure::Input(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<WorkLimit> for Failure {
    fn from(w: WorkLimit) -> Self {
        Failure::Resource(w.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let bounds = Bounds::from_env();
    let (command, inputs) = describe(&cli.command);
    let result = run(&cli, &bounds);
    let (outcomes, exit_status) = match result {
        Ok(outcomes) => {
            let status = if outcomes.iter().all(|o| o.passed) { 0 } else { 1 };
            (outcomes, status)
        }
        Err(f) => {
            let code = f.code();
            (vec![Outcome::new(f.kind(), false, json!(f.message()))], code)
        }
    };
    let report = RunReport {
        command,
        inputs,
        outcomes,
        timing_ms: if cli.json { None } else { Some(start.elapsed().as_millis()) },
        exit_status,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print_human(&report);
    }
    ExitCode::from(exit_status)
}

fn describe(cmd: &Command) -> (String, Vec<String>) {
    let path = |p: &PathBuf| p.display().to_string();
    match cmd {
        Command::Check { file, seed } => {
            let inputs = match (file, seed) {
                (Some(f), _) => vec![path(f)],
                (None, Some(s)) => vec![format!("corpus:{s}")],
                (None, None) => vec![],
            };
            ("check".into(), inputs)
        }
        Command::Skeletalize { file, .. } => ("skeletalize".into(), vec![path(file)]),
        Command::Complete { file, .. } => ("complete".into(), vec![path(file)]),
        Command::Day { file, .. } => ("day".into(), vec![path(file)]),
        Command::Precomp { file, target, .. } => {
            ("precomp".into(), vec![path(file), path(target)])
        }
        Command::Compare { file } => ("compare".into(), vec![path(file)]),
    }
}

fn run(cli: &Cli, bounds: &Bounds) -> Result<Vec<Outcome>, Failure> {
    match &cli.command {
        Command::Check { file, seed } => match (file, seed) {
            (Some(f), _) => check_file(f, cli.fail_fast),
            (None, Some(s)) => check_corpus(*s, cli.fail_fast),
            (None, None) => Err(Failure::Input("check needs a FILE or --seed N".into())),
        },
        Command::Skeletalize { file, out } => skeletalize_cmd(file, out),
        Command::Complete { file, out } => complete_cmd(file, out),
        Command::Day { file, presheaf } => day_cmd(file, presheaf, cli.fail_fast, bounds),
        Command::Precomp { file, target, candidates, strong, max_candidates } => {
            precomp_cmd(file, target, candidates, *strong, *max_candidates, bounds)
        }
        Command::Compare { file } => compare_cmd(file, bounds),
    }
}

// ---------------------------------------------------------------- loading

enum Input {
    Module(ElabModule),
    Artifact(Artifact),
}

fn load(path: &Path) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if path.extension().is_some_and(|e| e == "json") {
        let artifact = from_json(&text)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        Ok(Input::Artifact(artifact))
    } else {
        match dsl::load(&text) {
            Ok(module) => Ok(Input::Module(module)),
            Err(e @ ElabError::Invalid(_)) => {
                Err(Failure::Input(format!("{}:\n{e}", path.display())))
            }
            Err(e @ ElabError::Law { .. }) => {
                Err(Failure::Law(format!("{}: {e}", path.display())))
            }
        }
    }
}

/// The first monoidal category in the input, with object names when the
/// surface syntax supplied them.
fn monoidal_of(path: &Path) -> Result<(Arc<MonoidalCategory>, Vec<String>), Failure> {
    match load(path)? {
        Input::Module(module) => module
            .categories
            .iter()
            .find_map(|(_, c)| c.monoidal.clone().map(|m| (m, c.object_names.clone())))
            .ok_or_else(|| {
                Failure::Input(format!("{}: no monoidal category found", path.display()))
            }),
        Input::Artifact(Artifact::Monoidal(m)) => {
            let names = (0..m.base().n_objects()).map(|x| format!("x{x}")).collect();
            Ok((m, names))
        }
        Input::Artifact(a) => Err(Failure::Input(format!(
            "{}: expected a monoidal category, found a {} artifact",
            path.display(),
            a.kind()
        ))),
    }
}

/// The first category in the input, monoidal or not.
fn category_of(path: &Path) -> Result<Arc<FinCat>, Failure> {
    match load(path)? {
        Input::Module(module) => module
            .categories
            .first()
            .map(|(_, c)| Arc::clone(&c.cat))
            .ok_or_else(|| Failure::Input(format!("{}: no category found", path.display()))),
        Input::Artifact(Artifact::Category(c)) => Ok(c),
        Input::Artifact(Artifact::Monoidal(m)) => Ok(Arc::clone(m.base())),
        Input::Artifact(a) => Err(Failure::Input(format!(
            "{}: expected a category, found a {} artifact",
            path.display(),
            a.kind()
        ))),
    }
}

fn write_artifact(path: &Path, artifact: &Artifact) -> Result<(), Failure> {
    std::fs::write(path, to_json(artifact))
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

// ------------------------------------------------------------------ check

fn law_outcome(name: String, report: &moncat_core::LawReport, detail: Value) -> Outcome {
    let mut detail = detail;
    if !report.is_ok() {
        detail["violations"] = serde_json::to_value(&report.violations).expect("serializable");
    }
    Outcome::new(name, report.is_ok(), detail)
}

fn check_file(path: &Path, fail_fast: bool) -> Result<Vec<Outcome>, Failure> {
    let mut outcomes = Vec::new();
    match load(path)? {
        Input::Module(module) => {
            for (name, c) in &module.categories {
                let report = c
                    .cat
                    .check_category_laws()
                    .map_err(|e| Failure::Law(format!("category `{name}`: {e}")))?;
                outcomes.push(law_outcome(
                    format!("category {name}"),
                    &report,
                    json!({
                        "objects": c.cat.n_objects(),
                        "morphisms": c.cat.n_morphisms(),
                    }),
                ));
                if let Some(m) = &c.monoidal {
                    let report = check_monoidal_laws(m);
                    outcomes.push(law_outcome(format!("monoidal {name}"), &report, json!({})));
                }
                if fail_fast && outcomes.iter().any(|o| !o.passed) {
                    return Ok(outcomes);
                }
            }
            for (name, f) in &module.functors {
                outcomes.push(law_outcome(
                    format!("functor {name}"),
                    &f.check_laws(),
                    json!({}),
                ));
            }
            for (name, t) in &module.nattrans {
                outcomes.push(law_outcome(
                    format!("nattrans {name}"),
                    &t.check_naturality(),
                    json!({}),
                ));
            }
        }
        Input::Artifact(a) => check_artifact(&a, &mut outcomes)?,
    }
    Ok(outcomes)
}

fn check_artifact(a: &Artifact, outcomes: &mut Vec<Outcome>) -> Result<(), Failure> {
    match a {
        Artifact::Category(c) => {
            let report = c
                .check_category_laws()
                .map_err(|e| Failure::Law(e.to_string()))?;
            outcomes.push(law_outcome(
                "category".into(),
                &report,
                json!({"objects": c.n_objects(), "morphisms": c.n_morphisms()}),
            ));
        }
        Artifact::Monoidal(m) => {
            let base = m
                .base()
                .check_category_laws()
                .map_err(|e| Failure::Law(e.to_string()))?;
            outcomes.push(law_outcome("category".into(), &base, json!({})));
            outcomes.push(law_outcome("monoidal".into(), &check_monoidal_laws(m), json!({})));
        }
        Artifact::Functor(f) => {
            outcomes.push(law_outcome("functor".into(), &f.check_laws(), json!({})));
        }
        Artifact::NatTrans(t) => {
            outcomes.push(law_outcome("nattrans".into(), &t.check_naturality(), json!({})));
        }
        Artifact::Lax(l) => {
            outcomes.push(law_outcome(
                "lax_monoidal".into(),
                &check_lax_monoidal_functor(l),
                json!({"strong": is_strong_monoidal(l)}),
            ));
        }
        Artifact::Weq(w) => {
            outcomes.push(law_outcome("weak_equivalence".into(), &w.check(), json!({})));
        }
        Artifact::Transported(t) => {
            outcomes.push(law_outcome(
                "completed_monoidal".into(),
                &check_monoidal_laws(&t.monoidal),
                json!({}),
            ));
            outcomes.push(law_outcome(
                "completion_functor".into(),
                &check_lax_monoidal_functor(&t.h_mon),
                json!({"strong": is_strong_monoidal(&t.h_mon)}),
            ));
            outcomes.push(law_outcome(
                "weak_equivalence".into(),
                &t.weq.check(),
                json!({}),
            ));
        }
        Artifact::Presheaf(p) => {
            let (passed, detail) = match p.check() {
                Ok(()) => (true, json!({"sizes": p.sizes()})),
                Err(e) => (false, json!({"error": e.to_string()})),
            };
            outcomes.push(Outcome::new("presheaf", passed, detail));
        }
    }
    Ok(())
}

fn check_corpus(seed: u64, fail_fast: bool) -> Result<Vec<Outcome>, Failure> {
    let items = gen::corpus(seed, 60);
    let mut failures = Vec::new();
    for item in &items {
        let ok = item.cat.check_category_laws().map(|r| r.is_ok()).unwrap_or(false)
            && item
                .monoidal
                .as_ref()
                .map_or(true, |m| check_monoidal_laws(m).is_ok());
        if !ok {
            failures.push(item.name.clone());
            if fail_fast {
                break;
            }
        }
    }
    Ok(vec![Outcome::new(
        "corpus",
        failures.is_empty(),
        json!({"seed": seed, "items": items.len(), "failures": failures}),
    )])
}

// ---------------------------------------------------- skeletalize/complete

fn skeletalize_cmd(file: &Path, out: &Path) -> Result<Vec<Outcome>, Failure> {
    let cat = category_of(file)?;
    let (skel, weq) = skeletalize(&cat);
    let report = weq.check();
    let detail = json!({
        "objects_before": cat.n_objects(),
        "objects_after": skel.cat().n_objects(),
        "morphisms_before": cat.n_morphisms(),
        "morphisms_after": skel.cat().n_morphisms(),
        "skeletal": skel.cat().is_skeletal(),
    });
    let outcome = law_outcome("skeletalize".into(), &report, detail);
    write_artifact(out, &Artifact::Weq(weq))?;
    Ok(vec![outcome])
}

fn complete_cmd(file: &Path, out: &Path) -> Result<Vec<Outcome>, Failure> {
    let (m, _) = monoidal_of(file)?;
    let (_, weq) = skeletalize(m.base());
    let t = transport_monoidal(&weq, &m).map_err(|e| Failure::Law(e.to_string()))?;
    let outcomes = vec![
        law_outcome(
            "completed_monoidal".into(),
            &check_monoidal_laws(&t.monoidal),
            json!({
                "objects_before": m.base().n_objects(),
                "objects_after": t.monoidal.base().n_objects(),
            }),
        ),
        law_outcome(
            "completion_functor".into(),
            &check_lax_monoidal_functor(&t.h_mon),
            json!({"strong": is_strong_monoidal(&t.h_mon)}),
        ),
    ];
    write_artifact(out, &Artifact::Transported(t))?;
    Ok(outcomes)
}

// -------------------------------------------------------------------- day

fn parse_presheaf_spec(
    spec: &str,
    m: &Arc<MonoidalCategory>,
    names: &[String],
) -> Result<Presheaf, Failure> {
    let base = m.base();
    if let Some(rest) = spec.strip_prefix("y:") {
        let x = names
            .iter()
            .position(|n| n == rest)
            .or_else(|| rest.parse::<usize>().ok().filter(|&x| x < base.n_objects()))
            .ok_or_else(|| Failure::Input(format!("unknown object `{rest}` in `{spec}`")))?;
        Ok(yoneda(base, x))
    } else if let Some(rest) = spec.strip_prefix("sizes:") {
        let sizes: Vec<usize> = rest
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Input(format!("bad size list in `{spec}`: {e}")))?;
        if base.n_morphisms() != base.n_objects() {
            return Err(Failure::Input(
                "sizes: specs need a discrete base; use y:OBJ instead".into(),
            ));
        }
        if sizes.len() != base.n_objects() {
            return Err(Failure::Input(format!(
                "`{spec}` lists {} sizes but the base has {} objects",
                sizes.len(),
                base.n_objects()
            )));
        }
        Presheaf::discrete(base, &sizes).map_err(|e| Failure::Input(e.to_string()))
    } else {
        Err(Failure::Input(format!(
            "presheaf spec `{spec}` must start with y: or sizes:"
        )))
    }
}

/// Both naturality squares plus both round trips of the iso.
fn iso_two_sided(iso: &PresheafIso) -> bool {
    if !iso.forward.check_naturality().is_ok() || !iso.backward.check_naturality().is_ok() {
        return false;
    }
    let f = &iso.forward;
    let b = &iso.backward;
    let fb = f.then_vertical(b);
    let bf = b.then_vertical(f);
    let src_sizes: Vec<usize> = (0..fb.components().len()).map(|c| f.source().size(c)).collect();
    let tgt_sizes: Vec<usize> = (0..bf.components().len()).map(|c| f.target().size(c)).collect();
    fb.components()
        .iter()
        .zip(&src_sizes)
        .all(|(s, &n)| *s == SetFn::identity(n))
        && bf
            .components()
            .iter()
            .zip(&tgt_sizes)
            .all(|(s, &n)| *s == SetFn::identity(n))
}

fn day_cmd(
    file: &Path,
    specs: &[String],
    fail_fast: bool,
    bounds: &Bounds,
) -> Result<Vec<Outcome>, Failure> {
    let (m, names) = monoidal_of(file)?;
    let base = m.base();
    let mut outcomes = Vec::new();

    match specs.len() {
        0 => {}
        2 => {
            let f = parse_presheaf_spec(&specs[0], &m, &names)?;
            let g = parse_presheaf_spec(&specs[1], &m, &names)?;
            let d = day_tensor(&m, &f, &g, bounds)?;
            let sizes: Vec<usize> = base.objects().map(|c| d.size(c)).collect();
            outcomes.push(Outcome::new(
                "day_tensor",
                true,
                json!({"left": specs[0], "right": specs[1], "sizes": sizes}),
            ));
        }
        n => {
            return Err(Failure::Input(format!(
                "--presheaf must be given exactly twice (got {n})"
            )))
        }
    }

    let mut failures = Vec::new();
    let mut pairs = 0usize;
    'rep: for x in base.objects() {
        for y in base.objects() {
            pairs += 1;
            let iso = representability_witness(&m, x, y, bounds)?;
            if !iso_two_sided(&iso) {
                failures.push(format!("({}, {})", names[x], names[y]));
                if fail_fast {
                    break 'rep;
                }
            }
        }
    }
    outcomes.push(Outcome::new(
        "representability",
        failures.is_empty(),
        json!({"pairs": pairs, "failures": failures}),
    ));
    Ok(outcomes)
}

// ---------------------------------------------------------------- precomp

/// The collapse-everything comparison target: send all of D to the unit of
/// E, with mu given by a unitor. Lawful whenever id_I (x) id_I has a left
/// unitor collapsing it, which staged validation guarantees.
fn collapse_to_unit(d: &Arc<MonoidalCategory>, e: &Arc<MonoidalCategory>) -> LaxMonoidalFunctor {
    let n = d.base().n_objects();
    let f = Functor::constant(d.base(), e.base(), e.unit());
    let mu = vec![e.lunitor_at(e.unit()).forward; n * n];
    let eps = e.base().identity(e.unit());
    LaxMonoidalFunctor::new(Arc::clone(d), Arc::clone(e), f, mu, eps)
}

fn precomp_cmd(
    file: &Path,
    target: &Path,
    candidate_specs: &[String],
    strong: bool,
    max_candidates: usize,
    bounds: &Bounds,
) -> Result<Vec<Outcome>, Failure> {
    let (m, _) = monoidal_of(file)?;
    let (e_mon, _) = monoidal_of(target)?;
    let (_, weq) = skeletalize(m.base());
    let t = transport_monoidal(&weq, &m).map_err(|e| Failure::Law(e.to_string()))?;

    let candidates: Vec<LaxMonoidalFunctor> =
        if candidate_specs.len() == 1 && candidate_specs[0] == "auto" {
            enumerate_lax_monoidal(&t.monoidal, &e_mon, max_candidates, bounds)?
        } else {
            let mut out = Vec::new();
            for spec in candidate_specs {
                let path = Path::new(spec);
                match load(path)? {
                    Input::Artifact(Artifact::Lax(l)) => {
                        if l.dom() != &t.monoidal || l.cod() != &e_mon {
                            return Err(Failure::Input(format!(
                                "{spec}: candidate endpoints do not match the completion and target"
                            )));
                        }
                        out.push(l);
                    }
                    _ => {
                        return Err(Failure::Input(format!(
                            "{spec}: expected a lax monoidal functor artifact"
                        )))
                    }
                }
            }
            out
        };
    if candidates.is_empty() {
        return Err(Failure::Input("no candidates to verify against".into()));
    }

    // Comparison targets C -> E: each candidate precomposed with H, plus
    // the collapse-to-unit functor when it happens to be lawful.
    let mut targets: Vec<LaxMonoidalFunctor> = candidates
        .iter()
        .map(|g| compose_lax_monoidal(&t.h_mon, g))
        .collect();
    let collapse = collapse_to_unit(&m, &e_mon);
    if check_lax_monoidal_functor(&collapse).is_ok() {
        targets.push(collapse);
    }
    targets.truncate(max_candidates.max(1));

    let report = verify_precomp_equivalence(&t, &e_mon, &candidates, &targets, strong, bounds)?;
    let bijective = report.pairs.iter().all(|p| p.bijective);
    let factored = report
        .factorizations
        .iter()
        .all(|f| {
            f.lifted_lawful && f.comparison_ok && f.iso_ok && f.strong_ok.unwrap_or(true)
        });
    Ok(vec![
        Outcome::new(
            "candidates",
            report.invalid_candidates.is_empty() && report.invalid_targets.is_empty(),
            json!({
                "count": candidates.len(),
                "invalid_candidates": report.invalid_candidates,
                "invalid_targets": report.invalid_targets,
                "skipped_non_strong": report.skipped_non_strong,
            }),
        ),
        Outcome::new(
            "whiskering_bijection",
            bijective,
            serde_json::to_value(&report.pairs).expect("serializable"),
        ),
        Outcome::new(
            "factorization",
            factored,
            serde_json::to_value(&report.factorizations).expect("serializable"),
        ),
    ])
}

// ---------------------------------------------------------------- compare

fn compare_cmd(file: &Path, bounds: &Bounds) -> Result<Vec<Outcome>, Failure> {
    let (m, _) = monoidal_of(file)?;
    let cmp = compare_day_vs_transport(&m, bounds).map_err(|e| match e {
        CompletionError::WorkLimit(w) => Failure::Resource(w.to_string()),
        other => Failure::Law(other.to_string()),
    })?;
    let j_report = check_lax_monoidal_functor(&cmp.j);
    let j_strong = is_strong_monoidal(&cmp.j);
    let whisker = moncat_core::laxmon::check_monoidal_nat_trans(&cmp.whisker);
    let whisker_iso = cmp.whisker.nat.pointwise_isos().is_some();
    Ok(vec![
        Outcome::new(
            "comparison_functor",
            j_report.is_ok() && j_strong,
            json!({
                "strong": j_strong,
                "rezk_objects": cmp.rezk.monoidal.base().n_objects(),
                "day_objects": cmp.day.monoidal.base().n_objects(),
            }),
        ),
        Outcome::new(
            "comparison_cell",
            whisker.is_ok() && whisker_iso,
            json!({"iso": whisker_iso, "cells_equal": cmp.cells_equal}),
        ),
    ])
}

// ----------------------------------------------------------------- output

fn print_human(report: &RunReport) {
    for o in &report.outcomes {
        let status = if o.passed { "ok" } else { "FAILED" };
        match &o.detail {
            Value::String(s) => {
                println!("{}: {status}", o.name);
                for line in s.lines() {
                    println!("  {line}");
                }
            }
            d if d.is_null() || *d == json!({}) => println!("{}: {status}", o.name),
            d => println!("{}: {status} {d}", o.name),
        }
    }
    let verdict = if report.exit_status == 0 { "pass" } else { "fail" };
    match report.timing_ms {
        Some(ms) => println!(
            "{verdict} ({} checks) in {ms} ms",
            report.outcomes.len()
        ),
        None => println!("{verdict} ({} checks)", report.outcomes.len()),
    }
}
