//! `modring`: q-expansions, dimension tables, Hilbert series and presentation checks.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 unknown form,
//! identity, case or group, 3 bad configuration.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modring_catalog::expr::{conductor_for, Expr};
use modring_catalog::{Catalog, CatalogError, Check, Evaluator, GroupSpec};
use modring_core::hilbert::Expected;
use modring_core::{FieldCtx, HalfWeight};
use modring_verify::{
    all_tasks, case_tasks, check_tasks, full_report, identity_tasks, is_config_error, weight_json, Options, Report,
    Status, Task, DEFAULT_GUARD,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "modring", version, about = "Exact checks of graded rings of modular forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// q-expansion precision (number of coefficients)
    #[arg(long, global = true)]
    prec: Option<usize>,
    /// Largest weight to check or list
    #[arg(long, global = true)]
    kmax: Option<u32>,
    /// Number of Hilbert series terms to compare
    #[arg(long, global = true)]
    horizon: Option<u32>,
    /// Presentation case label, e.g. N7
    #[arg(long, global = true)]
    case: Option<String>,
    /// Group, e.g. full, gamma0:2, gammaH:11:[3], gammaH:8:[1]:half
    #[arg(long, global = true)]
    group: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Catalog file to use instead of the built-in one
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the q-expansion of a form or prefix expression
    Qexp { expr: Vec<String> },
    /// Dimensions of M_k(group) for k up to --kmax
    Dims,
    /// Claimed Hilbert series of a case, its expansion and the dimension table
    Hilbert,
    /// Run verification checks
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
    /// Inspect the catalog
    Catalog {
        #[command(subcommand)]
        what: CatalogWhat,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Catalog identities (all, or the one named)
    Identity { name: Option<String> },
    /// Span checks (all cases, or --case)
    Span,
    /// Relation vanishing (all cases, or --case)
    Relations,
    /// Kernel exhaustion (all cases, or --case)
    Kernel,
    /// Every check declared for --case
    Presentation,
    /// Every declared check, identity and integrality claim
    All,
}

#[derive(Subcommand)]
enum CatalogWhat {
    /// List groups, forms, identities and cases
    List,
}

enum Failure {
    Unknown(String),
    Config(String),
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::UnknownForm(_)
            | CatalogError::UnknownIdentity(_)
            | CatalogError::UnknownCase(_)
            | CatalogError::UnknownGroup(_) => Failure::Unknown(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Unknown(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let g = &cli.global;
    let owned;
    let catalog = match &g.catalog {
        Some(p) => {
            owned = Catalog::load(p).map_err(|e| Failure::Config(e.to_string()))?;
            &owned
        }
        None => Catalog::builtin(),
    };
    match &cli.command {
        Command::Qexp { expr } => qexp(catalog, g, &expr.join(" ")),
        Command::Dims => dims(catalog, g),
        Command::Hilbert => hilbert(catalog, g),
        Command::Verify { what } => verify(catalog, g, what),
        Command::Catalog { what: CatalogWhat::List } => list(catalog, g),
    }
}

fn qexp(catalog: &Catalog, g: &Global, src: &str) -> Result<ExitCode, Failure> {
    if src.trim().is_empty() {
        return Err(Failure::Config("qexp needs a form name or expression".into()));
    }
    let prec = g.prec.unwrap_or(20);
    if prec == 0 {
        return Err(Failure::Config("--prec must be at least 1".into()));
    }
    let expr = Expr::parse(src).map_err(|e| match e {
        CatalogError::Parse { .. } if !src.contains(char::is_whitespace) => {
            Failure::Unknown(format!("unknown form {src:?}"))
        }
        e => e.into(),
    })?;
    let mut refs = vec![];
    expr.references(&mut refs);
    for r in &refs {
        catalog.form(r)?;
    }
    let weight = catalog.expr_weight(&expr)?;
    let ctx = FieldCtx::new(conductor_for(&catalog.expr_root_orders(&expr)?));
    let series = Evaluator::new(catalog, &ctx).eval(&expr, prec)?;
    match g.output {
        Output::Text => println!("{series}"),
        Output::Json => {
            let coeffs: Vec<String> = series.coeffs().iter().map(|c| c.to_string()).collect();
            let v = json!({
                "expr": src,
                "weight": weight_json(weight),
                "conductor": ctx.conductor(),
                "precision": prec,
                "coefficients": coeffs,
            });
            println!("{v}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_group(g: &Global) -> Result<GroupSpec, Failure> {
    let s = g.group.as_deref().ok_or_else(|| Failure::Config("--group is required".into()))?;
    s.parse::<GroupSpec>().map_err(|e: CatalogError| Failure::Config(e.to_string()))
}

fn dims(catalog: &Catalog, g: &Global) -> Result<ExitCode, Failure> {
    let group = parse_group(g)?;
    if !catalog.has_dims(&group) {
        return Err(CatalogError::UnknownGroup(group.to_string()).into());
    }
    let kmax = g.kmax.unwrap_or(12);
    let step = if group.half_integral { 1 } else { 2 };
    let mut rows = vec![];
    for d in (0..=2 * kmax).step_by(step) {
        let w = HalfWeight::from_doubled(d);
        if let Ok(dim) = catalog.dim(&group, w) {
            rows.push((w, dim));
        } else if d == 0 {
            rows.push((w, 1));
        }
    }
    match g.output {
        Output::Text => {
            for (w, d) in rows {
                println!("k={w}: {d}");
            }
        }
        Output::Json => {
            let v: Vec<_> = rows.iter().map(|(w, d)| json!({ "weight": weight_json(*w), "dim": d })).collect();
            println!("{}", json!({ "group": group.to_string(), "dims": v }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn hilbert(catalog: &Catalog, g: &Global) -> Result<ExitCode, Failure> {
    let case = g.case.as_deref().ok_or_else(|| Failure::Config("--case is required".into()))?;
    let p = catalog.presentation(case)?;
    let hs = p.hilbert.as_ref().ok_or_else(|| Failure::Config(format!("case {case} has no Hilbert series")))?;
    let horizon = g.horizon.unwrap_or(20);
    let step = if p.group.half_integral { 1 } else { 2 };
    let expansion = hs.expand_doubled(2 * horizon as usize);
    let mut rows = vec![];
    let mut ok = true;
    for d in (0..=2 * horizon as usize).step_by(step) {
        let w = HalfWeight::from_doubled(d as u32);
        let want = match catalog.expected(&p.group, w)? {
            Expected::Dim(x) => Some(x),
            Expected::Zero => Some(0),
            Expected::Skip => None,
        };
        let good = want.is_none_or(|x| x == expansion[d]);
        ok &= good;
        rows.push((w, expansion[d], want, good));
    }
    match g.output {
        Output::Text => {
            println!("{case}: {hs}");
            for (w, s, want, good) in &rows {
                let want = want.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
                println!("k={w}: series {s}  dim {want}{}", if *good { "" } else { "  MISMATCH" });
            }
        }
        Output::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(w, s, want, good)| json!({ "weight": weight_json(*w), "series": s, "dim": want, "match": good }))
                .collect();
            println!("{}", json!({ "case": case, "series": hs.to_string(), "terms": v, "match": ok }));
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn verify(catalog: &Catalog, g: &Global, what: &VerifyWhat) -> Result<ExitCode, Failure> {
    let case = g.case.as_deref();
    let tasks: Vec<Task> = match what {
        VerifyWhat::Identity { name } => identity_tasks(catalog, name.as_deref())?,
        VerifyWhat::Span => check_tasks(catalog, Check::Span, case)?,
        VerifyWhat::Relations => check_tasks(catalog, Check::Relations, case)?,
        VerifyWhat::Kernel => check_tasks(catalog, Check::Kernel, case)?,
        VerifyWhat::Presentation => {
            let c = case.ok_or_else(|| Failure::Config("verify presentation needs --case".into()))?;
            case_tasks(catalog, c)?
        }
        VerifyWhat::All => match case {
            Some(c) => case_tasks(catalog, c)?,
            None => all_tasks(catalog),
        },
    };
    if g.horizon == Some(0) {
        return Err(Failure::Config("--horizon must be at least 1".into()));
    }
    let opts = Options { prec: g.prec, kmax: g.kmax, horizon: g.horizon.unwrap_or(20), guard: DEFAULT_GUARD };
    let reports = full_report(catalog, &tasks, &opts);
    if let Some(r) = reports.iter().find(|r| is_config_error(r)) {
        return Err(Failure::Config(format!("{} {}: {}", r.case, r.check.name(), r.details["error"])));
    }
    print_reports(&reports, g.output);
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn print_reports(reports: &[Report], output: Output) {
    match output {
        Output::Json => {
            for r in reports {
                println!("{}", r.to_json_line());
            }
        }
        Output::Text => {
            for r in reports {
                print!("{}", r.to_text());
            }
            let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
            println!("{} pass, {} fail, {} skipped", count(Status::Pass), count(Status::Fail), count(Status::Skipped));
        }
    }
}

fn list(catalog: &Catalog, g: &Global) -> Result<ExitCode, Failure> {
    let groups: Vec<String> = catalog.dim_rows().iter().map(|r| format!("{}  dim = {}", r.group, r.source)).collect();
    let forms: Vec<String> = catalog.forms().map(|f| format!("{}  weight {}  = {}", f.name, f.weight, f.source)).collect();
    let ids: Vec<String> = catalog.identities().iter().map(|i| format!("{}  {}", i.name, i.description)).collect();
    let cases: Vec<String> = catalog
        .presentations()
        .iter()
        .map(|p| {
            let checks: Vec<&str> = p.checks.iter().map(|c| c.name()).collect();
            format!("{}  {}  [{}]  {}", p.case, p.group, checks.join(","), p.description)
        })
        .collect();
    match g.output {
        Output::Text => {
            for (title, items) in [("groups", &groups), ("forms", &forms), ("identities", &ids), ("cases", &cases)] {
                println!("{title}:");
                for i in items {
                    println!("  {i}");
                }
            }
        }
        Output::Json => {
            println!("{}", json!({ "groups": groups, "forms": forms, "identities": ids, "cases": cases }));
        }
    }
    Ok(ExitCode::SUCCESS)
}
