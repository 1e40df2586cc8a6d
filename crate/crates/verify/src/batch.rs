//! Batches of checks, run in parallel and reported in a fixed order.

use std::time::Instant;

use modring_catalog::{Catalog, CatalogError, Check, Result};
use rayon::prelude::*;
use serde_json::json;

use crate::checks::{
    verify_hilbert, verify_identity, verify_integrality, verify_kernel, verify_relations, verify_span, Options,
    INTEGRALITY_PREC,
};
use crate::report::{CheckKind, Report, Status};

/// Forms checked for integrality in a full run.
pub const INTEGRAL_FORMS: [&str; 2] = ["alpha1", "alpha7"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Task {
    Case { case: String, check: Check },
    Identity(String),
    Integrality(String),
}

impl Task {
    fn label(&self) -> (&str, CheckKind) {
        match self {
            Task::Case { case, check } => (case, kind_of(*check)),
            Task::Identity(n) => (n, CheckKind::Identity),
            Task::Integrality(n) => (n, CheckKind::Integrality),
        }
    }
}

fn kind_of(c: Check) -> CheckKind {
    match c {
        Check::Span => CheckKind::Span,
        Check::Relations => CheckKind::Relation,
        Check::Kernel => CheckKind::Kernel,
        Check::Hilbert => CheckKind::Hilbert,
    }
}

/// Every check the catalog declares for the given case.
pub fn case_tasks(catalog: &Catalog, case: &str) -> Result<Vec<Task>> {
    let p = catalog.presentation(case)?;
    Ok(p.checks.iter().map(|&check| Task::Case { case: case.to_string(), check }).collect())
}

/// Cases declaring `check`, or only `case` if given.
pub fn check_tasks(catalog: &Catalog, check: Check, case: Option<&str>) -> Result<Vec<Task>> {
    if let Some(c) = case {
        catalog.presentation(c)?;
        return Ok(vec![Task::Case { case: c.to_string(), check }]);
    }
    Ok(catalog
        .presentations()
        .iter()
        .filter(|p| p.runs(check))
        .map(|p| Task::Case { case: p.case.clone(), check })
        .collect())
}

pub fn identity_tasks(catalog: &Catalog, name: Option<&str>) -> Result<Vec<Task>> {
    match name {
        Some(n) => {
            catalog.identity(n)?;
            Ok(vec![Task::Identity(n.to_string())])
        }
        None => Ok(catalog.identities().iter().map(|i| Task::Identity(i.name.clone())).collect()),
    }
}

pub fn all_tasks(catalog: &Catalog) -> Vec<Task> {
    let mut v: Vec<Task> = catalog
        .presentations()
        .iter()
        .flat_map(|p| p.checks.iter().map(|&check| Task::Case { case: p.case.clone(), check }))
        .collect();
    v.extend(catalog.identities().iter().map(|i| Task::Identity(i.name.clone())));
    v.extend(INTEGRAL_FORMS.iter().map(|n| Task::Integrality(n.to_string())));
    v
}

pub fn run_task(catalog: &Catalog, task: &Task, opts: &Options) -> Result<Report> {
    match task {
        Task::Case { case, check } => {
            let p = catalog.presentation(case)?;
            match check {
                Check::Span => verify_span(catalog, p, opts),
                Check::Relations => verify_relations(catalog, p, opts),
                Check::Kernel => verify_kernel(catalog, p, opts),
                Check::Hilbert => verify_hilbert(catalog, p, opts),
            }
        }
        Task::Identity(n) => verify_identity(catalog, catalog.identity(n)?, opts),
        Task::Integrality(n) => verify_integrality(catalog, n, opts.prec.unwrap_or(INTEGRALITY_PREC)),
    }
}

/// Runs every task; an error becomes a failed (or, for unknown relations, skipped)
/// report, so the batch always completes. Output is sorted by case, then check.
pub fn full_report(catalog: &Catalog, tasks: &[Task], opts: &Options) -> Vec<Report> {
    let mut reports: Vec<Report> = tasks
        .par_iter()
        .map(|task| {
            let t = Instant::now();
            run_task(catalog, task, opts).unwrap_or_else(|e| error_report(task, &e, t))
        })
        .collect();
    reports.sort_by(|a, b| (&a.case, a.check).cmp(&(&b.case, b.check)));
    reports
}

fn error_report(task: &Task, e: &CatalogError, t: Instant) -> Report {
    let (case, check) = task.label();
    let (status, kind) = match e {
        CatalogError::RelationsUnknown(_) => (Status::Skipped, "relations_unknown"),
        CatalogError::PrecisionTooLow { .. } => (Status::Fail, "precision_too_low"),
        _ => (Status::Fail, "error"),
    };
    Report {
        case: case.to_string(),
        check,
        k_range: [json!(null), json!(null)],
        precision: 0,
        status,
        details: json!({ "error": e.to_string(), "error_kind": kind }),
        elapsed_ms: t.elapsed().as_millis() as u64,
    }
}

/// Whether a report records a configuration problem rather than a verification outcome.
pub fn is_config_error(r: &Report) -> bool {
    r.details.get("error_kind").and_then(|k| k.as_str()) == Some("precision_too_low")
}
