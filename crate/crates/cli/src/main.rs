//! `dicoh`: command-line front end for the dialgebra cohomology engine.
//!
//! Every command reads a JSON bundle (`--input`, or stdin) and writes JSON to
//! stdout; a one-line summary goes to stderr unless `--json` is given.
//! Exit codes: 0 pass, 1 semantic failure, 2 unreadable or malformed input.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dicoh_core::deformations::{
    check_deformation, check_equivalence, infinitesimal, infinitesimals_cohomologous, rigidity_probe, transport,
};
use dicoh_core::degree1::is_degree1_cocycle;
use dicoh_core::dialgebra::check_axioms;
use dicoh_core::extensions::{build_extension, canonical_section, check_singular_extension, extract_cocycle};
use dicoh_core::io::{
    cocycle_to_json, cohomology_to_json, deformation_to_json, extension_to_json, matrix_to_json, total_layout,
};
use dicoh_core::linalg::{format_rational, rat};
use dicoh_core::oriented::check_oriented_dialgebra;
use dicoh_core::trees::enumerate_trees;
use dicoh_core::{Bundle, Degree1Cochain, Engine, Error, Matrix, OrientedDialgebra, Report, TruncatedDeformation};

#[derive(Parser)]
#[command(name = "dicoh", version, about = "Cohomology of dialgebras with oriented group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug, Default)]
struct Common {
    /// Input bundle (JSON); stdin when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Degree or tree level.
    #[arg(long)]
    n: Option<usize>,
    /// Truncation order when the bundle carries no deformation.
    #[arg(long)]
    order: Option<usize>,
    /// Machine output only: compact JSON, no summary on stderr.
    #[arg(long)]
    json: bool,
    /// Pretty-print JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the trees of Y_n in canonical order, one word per line.
    Trees(Common),
    /// Run every checker applicable to the bundle.
    Check(Common),
    /// Dialgebra cohomology HY^n(D, D).
    Cohomology(Common),
    /// Equivariant cohomology of the reduced bicomplex in total degree n.
    EquivariantCohomology(Common),
    /// Build the singular extension of a degree-1 cocycle.
    Extend(Common),
    /// Recover the cocycle of an extension through a section.
    Extract(Common),
    /// Check the degree-1 cocycle equations.
    CocycleCheck(Common),
    /// Check the defining clauses of a truncated deformation.
    DeformCheck(Common),
    /// The n-th infinitesimal of a deformation, as a cocycle.
    Infinitesimal(Common),
    /// Check an equivalence of deformations and certify its infinitesimals.
    EquivalenceCheck(Common),
    /// Probe rigidity through the first equivariant cohomology.
    Rigidity(Common),
}

/// What a command produced: the JSON to print, a summary and whether it passed.
struct Outcome {
    value: Value,
    /// Plain-text output replacing the JSON document.
    text: Option<String>,
    summary: String,
    passed: bool,
}

impl Outcome {
    fn ok(value: Value, summary: impl Into<String>) -> Self {
        Outcome {
            value,
            text: None,
            summary: summary.into(),
            passed: true,
        }
    }

    fn report(report: &Report, extra: Option<(&str, Value)>) -> Self {
        let passed = report.passed();
        let mut value = json!({ "passed": passed, "clauses": report.clauses });
        if let Some((k, v)) = extra {
            value[k] = v;
        }
        let failed = report.clauses.iter().filter(|c| !c.passed).count();
        let summary = match report.first_failure() {
            None => format!("all {} clauses pass", report.clauses.len()),
            Some(c) => format!(
                "{failed} of {} clauses fail; first: {} ({})",
                report.clauses.len(),
                c.name,
                c.witness.as_deref().unwrap_or("")
            ),
        };
        Outcome {
            value,
            text: None,
            summary,
            passed,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::ShapeMismatch(_) => 2,
        _ => 1,
    }
}

fn read_bundle(common: &Common) -> Result<Bundle, Error> {
    let text = match &common.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
            s
        }
    };
    Bundle::parse(&text)
}

fn require_n(common: &Common) -> Result<usize, Error> {
    common.n.ok_or_else(|| Error::Parse("--n is required".into()))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn prefixed(prefix: &str, report: Report) -> Report {
    let mut out = Report::new();
    for mut c in report.clauses {
        c.name = format!("{prefix}: {}", c.name);
        out.clauses.push(c);
    }
    out
}

fn cmd_check(b: &Bundle) -> Result<Outcome, Error> {
    let od = b.oriented_unchecked()?;
    let mut report = Report::new();
    for (axiom, witness) in check_axioms(od.dialgebra()).results {
        report.record(
            format!("dialgebra: {}", axiom.equation()),
            witness.map(|(i, j, k)| format!("basis triple ({i}, {j}, {k})")),
        );
    }
    report.extend(prefixed("oriented", check_oriented_dialgebra(&od)));
    if b.cocycle.is_some() {
        let c = b.cocycle()?;
        report.record("cocycle: degree-1 cocycle equations", cocycle_witness(&od, &c)?);
    }
    if b.extension.is_some() {
        let ext = b.extension()?;
        report.extend(prefixed("extension", check_singular_extension(&od, &ext)));
        if let Some(s) = b.section()? {
            let ok = ext.projection.mul(&s).map(|m| m == Matrix::identity(od.dim()));
            report.record("section: p ∘ s = id", (!ok.unwrap_or(false)).then(|| "p ∘ s ≠ id".to_string()));
        }
    }
    if b.deformation.is_some() {
        let def = b.deformation()?;
        report.extend(prefixed("deformation", check_deformation(&od, &def)));
        if let (Some(target), Some(_)) = (b.target()?, &b.equivalence) {
            report.extend(prefixed("equivalence", check_equivalence(&od, &target, &def, &b.equivalence()?)));
        }
    }
    Ok(Outcome::report(&report, None))
}

fn cocycle_witness(od: &OrientedDialgebra, c: &Degree1Cochain) -> Result<Option<String>, Error> {
    let check = is_degree1_cocycle(od, c)?;
    Ok(check
        .residual
        .iter()
        .position(|x| *x != rat(0))
        .map(|i| format!("residual coordinate {i} = {}", format_rational(&check.residual[i]))))
}

fn cmd_cohomology(b: &Bundle, n: usize, equivariant: bool) -> Result<Outcome, Error> {
    let od = b.oriented()?;
    let engine = Engine::new(od.clone(), b.config())?;
    let (result, layout) = if equivariant {
        b.config().check_total_degree(n)?;
        (engine.equivariant_cohomology(n)?, Some(total_layout(od.group().order(), od.dim(), n)))
    } else {
        (engine.dialgebra_cohomology(n)?, None)
    };
    let summary = format!("dim = {}", result.dim);
    Ok(Outcome::ok(cohomology_to_json(&result, layout.as_deref()), summary))
}

fn cmd_extend(b: &Bundle) -> Result<Outcome, Error> {
    let od = b.oriented()?;
    let ext = build_extension(&od, &b.cocycle()?)?;
    let mut out = Bundle::from_oriented(&od);
    out.extension = Some(extension_to_json(&ext));
    Ok(Outcome::ok(to_value(&out), format!("extension of dimension {}", ext.total.dim())))
}

fn cmd_extract(b: &Bundle) -> Result<Outcome, Error> {
    let od = b.oriented()?;
    let ext = b.extension()?;
    let section = b.section()?.unwrap_or_else(|| canonical_section(od.dim()));
    let c = extract_cocycle(&od, &ext, &section)?;
    let mut out = Bundle::from_oriented(&od);
    out.cocycle = Some(cocycle_to_json(&c));
    let summary = if c.is_zero() { "zero cocycle" } else { "cocycle extracted" };
    Ok(Outcome::ok(to_value(&out), summary))
}

fn cmd_cocycle_check(b: &Bundle) -> Result<Outcome, Error> {
    let od = b.oriented()?;
    let mut report = Report::new();
    report.record("degree-1 cocycle equations", cocycle_witness(&od, &b.cocycle()?)?);
    Ok(Outcome::report(&report, None))
}

fn deformation_or_constant(b: &Bundle, common: &Common, od: &OrientedDialgebra) -> Result<TruncatedDeformation, Error> {
    match (&b.deformation, common.order) {
        (Some(_), _) => b.deformation(),
        (None, Some(order)) => Ok(TruncatedDeformation::constant(od, order)),
        (None, None) => Err(Error::Parse("bundle has no \"deformation\" section and no --order was given".into())),
    }
}

fn cmd_deform_check(b: &Bundle, common: &Common) -> Result<Outcome, Error> {
    let od = b.oriented()?;
    let def = deformation_or_constant(b, common, &od)?;
    Ok(Outcome::report(&check_deformation(&od, &def), None))
}

fn cmd_infinitesimal(b: &Bundle, common: &Common) -> Result<Outcome, Error> {
    let od = b.oriented()?;
    let def = deformation_or_constant(b, common, &od)?;
    let n = common.n.unwrap_or(1);
    let c = infinitesimal(&od, &def, n)?;
    let holds = is_degree1_cocycle(&od, &c)?.holds;
    let mut out = Bundle::from_oriented(&od);
    out.cocycle = Some(cocycle_to_json(&c));
    Ok(Outcome {
        value: to_value(&out),
        text: None,
        summary: format!("infinitesimal of order {n} {} a cocycle", if holds { "is" } else { "is NOT" }),
        passed: holds,
    })
}

fn cmd_equivalence_check(b: &Bundle) -> Result<Outcome, Error> {
    let od = b.oriented()?;
    let def = b.deformation()?;
    let eq = b.equivalence()?;
    let (target, computed) = match b.target()? {
        Some(t) => (t, false),
        None => (transport(&def, &eq)?, true),
    };
    let mut report = check_equivalence(&od, &target, &def, &eq);
    let certificate = if report.passed() && eq.order >= 1 {
        match infinitesimals_cohomologous(&od, &target, &def, &eq) {
            Ok(gamma) => {
                report.pass("infinitesimals differ by the coboundary of ψ_1");
                Some(matrix_to_json(&gamma))
            }
            Err(e) => {
                report.fail("infinitesimals differ by the coboundary of ψ_1", e.to_string());
                None
            }
        }
    } else {
        None
    };
    let mut outcome = Outcome::report(&report, Some(("certificate", to_value(&certificate))));
    if computed {
        outcome.value["target"] = to_value(&deformation_to_json(&target));
    }
    Ok(outcome)
}

fn cmd_rigidity(b: &Bundle) -> Result<Outcome, Error> {
    let od = b.oriented()?;
    let r = rigidity_probe(&od)?;
    let value = json!({
        "h1_dim": r.h1_dim,
        "obstruction_space_trivial": r.obstruction_space_trivial(),
        "candidates": r.candidates.iter().map(cocycle_to_json).collect::<Vec<_>>(),
    });
    let summary = if r.obstruction_space_trivial() {
        "first equivariant cohomology vanishes".to_string()
    } else {
        format!("first equivariant cohomology has dimension {}", r.h1_dim)
    };
    Ok(Outcome::ok(value, summary))
}

fn run(command: &Command) -> Result<(Outcome, Common), Error> {
    let common = match command {
        Command::Trees(c)
        | Command::Check(c)
        | Command::Cohomology(c)
        | Command::EquivariantCohomology(c)
        | Command::Extend(c)
        | Command::Extract(c)
        | Command::CocycleCheck(c)
        | Command::DeformCheck(c)
        | Command::Infinitesimal(c)
        | Command::EquivalenceCheck(c)
        | Command::Rigidity(c) => c.clone(),
    };
    if let Command::Trees(_) = command {
        let trees = enumerate_trees(require_n(&common)?)?;
        let lines: Vec<String> = trees.iter().map(|t| to_value(t).to_string()).collect();
        let mut outcome = Outcome::ok(Value::Null, format!("{} trees", trees.len()));
        outcome.text = Some(lines.join("\n"));
        return Ok((outcome, common));
    }
    let b = read_bundle(&common)?;
    let outcome = match command {
        Command::Trees(_) => unreachable!(),
        Command::Check(_) => cmd_check(&b)?,
        Command::Cohomology(_) => cmd_cohomology(&b, require_n(&common)?, false)?,
        Command::EquivariantCohomology(_) => cmd_cohomology(&b, require_n(&common)?, true)?,
        Command::Extend(_) => cmd_extend(&b)?,
        Command::Extract(_) => cmd_extract(&b)?,
        Command::CocycleCheck(_) => cmd_cocycle_check(&b)?,
        Command::DeformCheck(_) => cmd_deform_check(&b, &common)?,
        Command::Infinitesimal(_) => cmd_infinitesimal(&b, &common)?,
        Command::EquivalenceCheck(_) => cmd_equivalence_check(&b)?,
        Command::Rigidity(_) => cmd_rigidity(&b)?,
    };
    Ok((outcome, common))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((outcome, common)) => {
            let body = match &outcome.text {
                Some(text) => text.clone(),
                None if common.pretty => serde_json::to_string_pretty(&outcome.value).expect("serializable"),
                None => outcome.value.to_string(),
            };
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if !common.json {
                eprintln!("{}", outcome.summary);
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
