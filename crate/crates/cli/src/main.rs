//! `stableforms` command-line front end.
//!
//! Exit codes: 0 ok, 2 invalid input (syntax, unknown ids), 3 arithmetic
//! failure in the pipeline, 4 scenario mismatch.

mod report;
mod text;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};
use thiserror::Error;

use stableforms::catalog::{self, run_scenario_with, scenario, CatalogError};
use stableforms::curvature::DEFAULT_RETRY_BUDGET;
use stableforms::exterior::{parse_form, ExteriorError};
use stableforms::lie_algebra::{parse_tuple, LieAlg, LieError};
use stableforms::pipeline::{analyze, Options};
use stableforms::scalars::{parse_scalar, Point, Scalar, ScalarError, Symbol};

const RETRY_ENV: &str = "STABLEFORMS_RETRY_BUDGET";

#[derive(Parser)]
#[command(name = "stableforms", version, about = "Stable forms and curvature on six-dimensional nilpotent Lie algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra in tuple notation, e.g. "(0,0,12,13,14+23,34-25)".
    Parse { tuple: String },
    /// Run the full pipeline for a 2-form on an algebra.
    Analyze(AnalyzeArgs),
    /// Catalog scenarios.
    #[command(subcommand)]
    Scenario(ScenarioCommand),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Catalog id (g1..g5, abelian6) or tuple notation.
    #[arg(long)]
    algebra: String,
    /// 2-form literal, e.g. "a12*e12 + a46*e46".
    #[arg(long)]
    omega: String,
    #[command(flatten)]
    values: Values,
}

#[derive(Args)]
struct Values {
    /// Substitution `symbol=expression`, repeatable.
    #[arg(long = "subs", value_name = "K=V")]
    subs: Vec<String>,
    /// Value pinned at every signature sample point, repeatable.
    #[arg(long = "sample-point", value_name = "K=V")]
    sample_point: Vec<String>,
}

#[derive(Subcommand)]
enum ScenarioCommand {
    /// List scenario ids with their algebras.
    List,
    /// Run a scenario and compare against its expected values.
    Run {
        id: String,
        #[command(flatten)]
        values: Values,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("omega: {0}")]
    Form(#[from] ExteriorError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Catalog(CatalogError::UnknownScenario(_)) => 2,
            CliError::Catalog(_) => 3,
            _ => 2,
        }
    }
}

/// A report plus the exit code and an optional diagnostic for stderr.
struct Outcome {
    report: Map<String, Value>,
    code: u8,
    message: Option<String>,
}

impl Outcome {
    fn ok(report: Map<String, Value>) -> Outcome {
        Outcome {
            report,
            code: 0,
            message: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Parse { tuple } => cmd_parse(tuple),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Scenario(ScenarioCommand::List) => Ok(cmd_list()),
        Command::Scenario(ScenarioCommand::Run { id, values }) => cmd_run(id, values),
    };
    match result {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&Value::Object(out.report)).expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Text => text::render(&Value::Object(out.report)),
            };
            print!("{rendered}");
            if let Some(m) = out.message {
                eprintln!("stableforms: {m}");
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("stableforms: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn cmd_parse(tuple: &str) -> Result<Outcome, CliError> {
    let l = parse_tuple(tuple)?;
    check_jacobi(&l)?;
    let mut out = report::envelope();
    out.insert("algebra".into(), report::algebra(tuple, &l));
    Ok(Outcome::ok(out))
}

fn check_jacobi(l: &LieAlg) -> Result<(), CliError> {
    match l.jacobi_defect().first() {
        None => Ok(()),
        Some((i, j, k, _)) => Err(CliError::Input(format!(
            "not a Lie algebra: Jacobi identity fails for (e{}, e{}, e{})",
            i + 1,
            j + 1,
            k + 1
        ))),
    }
}

fn resolve_algebra(text: &str) -> Result<LieAlg, CliError> {
    if text.trim_start().starts_with('(') {
        let l = parse_tuple(text)?;
        check_jacobi(&l)?;
        return Ok(l);
    }
    catalog::algebra(text).ok_or_else(|| {
        CliError::Input(format!(
            "unknown algebra `{text}` (expected one of {} or tuple notation)",
            catalog::ALGEBRA_IDS.join(", ")
        ))
    })
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<Outcome, CliError> {
    let l = resolve_algebra(&args.algebra)?;
    let omega = parse_form(&args.omega, l.dim())?;
    omega.expect_degree(2)?;
    let opts = options(&args.values)?;
    let a = analyze(&l, &omega, &opts);

    let mut out = report::envelope();
    out.insert("algebra".into(), report::algebra(&args.algebra, &l));
    report::analysis(&a, &mut out);
    let (code, message) = match &a.failure {
        None => (0, None),
        Some(_) if report::is_symbolic_only(&a) => (
            0,
            Some(format!("sqrt(|lambda|) is not a rational function; J reported as {}", report::SYMBOLIC_J)),
        ),
        Some(f) => (3, Some(f.to_string())),
    };
    Ok(Outcome { report: out, code, message })
}

fn cmd_list() -> Outcome {
    let mut out = report::envelope();
    let ids: Map<String, Value> = catalog::list_scenarios()
        .into_iter()
        .map(|id| {
            let algebra = scenario(id).expect("listed ids resolve").algebra_id;
            (id.to_string(), algebra.into())
        })
        .collect();
    out.insert("scenarios".into(), Value::Object(ids));
    Outcome::ok(out)
}

fn cmd_run(id: &str, values: &Values) -> Result<Outcome, CliError> {
    let opts = options(values)?;
    let sc = scenario(id)?;
    let r = run_scenario_with(id, &opts.subs, &opts)?;
    let out = report::scenario(&r, &sc.algebra);
    Ok(match r.first_mismatch() {
        None => Outcome::ok(out),
        Some(c) => Outcome {
            report: out,
            code: 4,
            message: Some(format!(
                "mismatch in {}: expected {}, got {}",
                c.item, c.expected, c.actual
            )),
        },
    })
}

fn options(values: &Values) -> Result<Options, CliError> {
    let mut opts = Options::default();
    for (sym, v) in assignments(&values.subs, "--subs")? {
        opts.subs.insert(sym, v);
    }
    let mut pinned = Point::new();
    for (sym, v) in assignments(&values.sample_point, "--sample-point")? {
        let r = v
            .as_rational()
            .ok_or_else(|| CliError::Input(format!("--sample-point {}: value must be a rational number", sym.name())))?;
        pinned.insert(sym, r);
    }
    opts.sample_overrides = pinned;
    opts.retry_budget = retry_budget()?;
    Ok(opts)
}

fn retry_budget() -> Result<usize, CliError> {
    match std::env::var(RETRY_ENV) {
        Err(_) => Ok(DEFAULT_RETRY_BUDGET),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{RETRY_ENV}={v}: expected a non-negative integer"))),
    }
}

fn assignments(items: &[String], flag: &str) -> Result<BTreeMap<Symbol, Scalar>, CliError> {
    let bad = |item: &str, why: String| CliError::Input(format!("{flag} {item}: {why}"));
    let mut out = BTreeMap::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| bad(item, "expected symbol=value".into()))?;
        let name = name.trim();
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(bad(item, format!("invalid symbol name `{name}`")));
        }
        let sym = Symbol::intern(name).map_err(|e| bad(item, e.to_string()))?;
        let v = parse_scalar(value).map_err(|e| match e {
            ScalarError::Syntax { pos, msg } => bad(item, format!("syntax error at position {pos} of the value: {msg}")),
            other => bad(item, other.to_string()),
        })?;
        out.insert(sym, v);
    }
    Ok(out)
}
