//! Individual checks. Each returns a [`Report`]; errors are configuration or
//! catalog problems, not verification failures.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use modring_catalog::expr::conductor_for;
use modring_catalog::{Catalog, CatalogError, Evaluator, GroupSpec, Identity, Presentation, Result};
use modring_core::hilbert::Expected;
use modring_core::linalg::{self, Matrix};
use modring_core::{FieldCtx, HalfWeight, QSeries};
use serde_json::{json, Value};

use crate::engine::{coeff_vector, GenEval};
use crate::monomials::weighted_monomials;
use crate::report::{weight_json, CheckKind, Report, Status};

pub const DEFAULT_GUARD: usize = 8;
pub const DEFAULT_HORIZON: u32 = 20;
pub const INTEGRALITY_PREC: usize = 100;

#[derive(Debug, Clone)]
pub struct Options {
    /// Precision override; refused when below the Sturm bound a check needs.
    pub prec: Option<usize>,
    /// Overrides each case's `kmax` (span) and `kernel_kmax` (kernel).
    pub kmax: Option<u32>,
    pub horizon: u32,
    pub guard: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { prec: None, kmax: None, horizon: DEFAULT_HORIZON, guard: DEFAULT_GUARD }
    }
}

impl Options {
    fn precision(&self, needed: usize) -> Result<usize> {
        match self.prec {
            Some(p) if p < needed => Err(CatalogError::PrecisionTooLow { given: p, needed }),
            Some(p) => Ok(p),
            None => Ok(needed + self.guard),
        }
    }
}

fn elapsed(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn range(lo: HalfWeight, hi: HalfWeight) -> [Value; 2] {
    [weight_json(lo), weight_json(hi)]
}

/// Precision needed to decide vanishing of a weight-`w` form on `group`.
pub fn vanishing_prec(group: &GroupSpec, w: HalfWeight) -> usize {
    if w.is_integral() {
        group.sturm_prec(w)
    } else {
        group.sturm_prec_squared(w)
    }
}

fn first_nonzero(s: &QSeries) -> Option<usize> {
    s.coeffs().iter().position(|c| !c.is_zero())
}

/// Rank of the weight-`k` monomials in the generators of `p`.
pub fn span_rank(catalog: &Catalog, p: &Presentation, k: HalfWeight, prec: usize) -> Result<usize> {
    let needed = p.group.sturm_prec(k);
    if prec < needed {
        return Err(CatalogError::PrecisionTooLow { given: prec, needed });
    }
    GenEval::new(catalog, p, prec)?.span_rank(k)
}

pub fn verify_span(catalog: &Catalog, p: &Presentation, opts: &Options) -> Result<Report> {
    let t = Instant::now();
    let kmax = opts.kmax.unwrap_or(p.kmax);
    let weights = p.weights_up_to(kmax);
    let top = *weights.last().expect("weight 0 is always present");
    let prec = opts.precision(p.group.sturm_prec(top))?;
    let mut ge = GenEval::new(catalog, p, prec)?;
    let mut rows = vec![];
    let mut first_failure = Value::Null;
    for &w in &weights {
        let expected = catalog.expected(&p.group, w)?;
        let (mons, m) = ge.monomial_matrix(w)?;
        let rank = linalg::rank(&m, prec)?;
        let (dim, ok) = match expected {
            Expected::Dim(d) => (json!(d), rank as i64 == d),
            Expected::Zero => (json!(0), rank == 0),
            Expected::Skip => (Value::Null, true),
        };
        let row = json!({ "weight": weight_json(w), "monomials": mons.len(), "rank": rank, "dim": dim });
        if !ok && first_failure.is_null() {
            first_failure = row.clone();
        }
        rows.push(row);
    }
    let status = Status::from_bool(first_failure.is_null());
    let mut details = json!({ "generators": p.gens, "weights": rows });
    if !first_failure.is_null() {
        details["first_failure"] = first_failure;
    }
    Ok(Report {
        case: p.case.clone(),
        check: CheckKind::Span,
        k_range: range(HalfWeight::from_doubled(0), top),
        precision: prec,
        status,
        details,
        elapsed_ms: elapsed(t),
    })
}

pub fn verify_relations(catalog: &Catalog, p: &Presentation, opts: &Options) -> Result<Report> {
    let t = Instant::now();
    if p.relations.is_empty() {
        return Err(CatalogError::Invalid(format!("case {} declares no relations", p.case)));
    }
    let needed = p.relations.iter().map(|r| vanishing_prec(&p.group, r.weight)).max().unwrap_or(0);
    let prec = opts.precision(needed)?;
    let mut ge = GenEval::new(catalog, p, prec)?;
    let mut rows = vec![];
    let mut first_failure = Value::Null;
    for r in &p.relations {
        let need = vanishing_prec(&p.group, r.weight);
        let s = ge.eval_poly(&r.poly)?;
        let nz = first_nonzero(&s);
        let row = json!({
            "relation": r.name,
            "weight": weight_json(r.weight),
            "sturm": need,
            "vanishes": nz.is_none(),
            "first_nonzero": nz,
        });
        if nz.is_some() && first_failure.is_null() {
            first_failure = row.clone();
        }
        rows.push(row);
    }
    let conj = conj_closure(p)?;
    let conj_ok = conj.as_ref().is_none_or(|v| v.iter().all(|(_, ok)| *ok));
    let status = Status::from_bool(first_failure.is_null() && conj_ok);
    let mut details = json!({ "relations": rows });
    if let Some(v) = conj {
        details["conjugation_closed"] = Value::from(conj_ok);
        if !conj_ok {
            let bad: Vec<&String> = v.iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
            details["not_closed"] = json!(bad);
        }
    }
    if !first_failure.is_null() {
        details["first_failure"] = first_failure;
    }
    let lo = p.relations.iter().map(|r| r.weight).min().expect("nonempty");
    let hi = p.relations.iter().map(|r| r.weight).max().expect("nonempty");
    Ok(Report { case: p.case.clone(), check: CheckKind::Relation, k_range: range(lo, hi), precision: prec, status, details, elapsed_ms: elapsed(t) })
}

/// For cases whose generators all have declared conjugates: whether the
/// conjugate of each relation lies in the span of relations of its weight.
fn conj_closure(p: &Presentation) -> Result<Option<Vec<(String, bool)>>> {
    if p.conj.iter().any(|c| c.is_none()) {
        return Ok(None);
    }
    let mut out = vec![];
    for r in &p.relations {
        let c = r.poly.conj(&p.conj, &p.gens)?;
        let mons = weighted_monomials(&p.weights, r.weight);
        let index: HashMap<Vec<u32>, usize> = mons.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let same: Matrix = p
            .relations
            .iter()
            .filter(|s| s.weight == r.weight)
            .filter_map(|s| coeff_vector(&p.ctx, &s.poly, &index))
            .collect();
        let base = linalg::rank(&same, mons.len())?;
        let mut with = same.clone();
        match coeff_vector(&p.ctx, &c, &index) {
            Some(v) => with.push(v),
            None => {
                out.push((r.name.clone(), false));
                continue;
            }
        }
        out.push((r.name.clone(), linalg::rank(&with, mons.len())? == base));
    }
    Ok(Some(out))
}

/// Kernel data at one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelStep {
    pub weight: HalfWeight,
    pub monomials: usize,
    pub rank: usize,
    pub dim_kernel: usize,
    pub dim_ideal: usize,
    /// Rank of kernel and ideal together; equals `dim_kernel` iff the ideal lies in the kernel.
    pub dim_union: usize,
}

impl KernelStep {
    pub fn exhausted(&self) -> bool {
        self.dim_ideal == self.dim_kernel && self.dim_union == self.dim_kernel
    }
}

/// Compares the evaluation kernel at weight `k` with the degree-`k` part of the relation ideal.
pub fn kernel_step(ge: &mut GenEval, p: &Presentation, k: HalfWeight) -> Result<KernelStep> {
    if p.relations_unknown {
        return Err(CatalogError::RelationsUnknown(p.case.clone()));
    }
    let ctx = ge.ctx().clone();
    let prec = ge.prec();
    let (mons, m) = ge.monomial_matrix(k)?;
    let n = mons.len();
    let kernel = linalg::left_nullspace(&ctx, &m, prec)?;
    let index: HashMap<Vec<u32>, usize> = mons.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut ideal: Matrix = vec![];
    for r in &p.relations {
        if r.weight.doubled() > k.doubled() {
            continue;
        }
        let rest = HalfWeight::from_doubled(k.doubled() - r.weight.doubled());
        for e in weighted_monomials(&p.weights, rest) {
            let v = coeff_vector(&ctx, &r.poly.shift(&e), &index).expect("multiples stay in weight k");
            ideal.push(v);
        }
    }
    let dim_ideal = linalg::rank(&ideal, n)?;
    let mut union = kernel.clone();
    union.extend(ideal);
    let dim_union = linalg::rank(&union, n)?;
    Ok(KernelStep { weight: k, monomials: n, rank: n - kernel.len(), dim_kernel: kernel.len(), dim_ideal, dim_union })
}

pub fn verify_kernel(catalog: &Catalog, p: &Presentation, opts: &Options) -> Result<Report> {
    let t = Instant::now();
    if p.relations_unknown {
        return Err(CatalogError::RelationsUnknown(p.case.clone()));
    }
    let kmax = opts.kmax.unwrap_or(p.kernel_kmax);
    let weights = p.weights_up_to(kmax);
    let top = *weights.last().expect("weight 0 is always present");
    let prec = opts.precision(p.group.sturm_prec(top))?;
    let mut ge = GenEval::new(catalog, p, prec)?;
    let mut rows = vec![];
    let mut first_failure = Value::Null;
    for &w in weights.iter().skip(1) {
        let s = kernel_step(&mut ge, p, w)?;
        let (dim, table_ok) = match catalog.expected(&p.group, w)? {
            Expected::Dim(d) => (json!(d), s.rank as i64 == d),
            Expected::Zero => (json!(0), s.rank == 0),
            Expected::Skip => (Value::Null, true),
        };
        let row = json!({
            "weight": weight_json(w),
            "monomials": s.monomials,
            "dim": dim,
            "rank": s.rank,
            "dim_kernel": s.dim_kernel,
            "dim_ideal": s.dim_ideal,
            "dim_union": s.dim_union,
        });
        if !(s.exhausted() && table_ok) && first_failure.is_null() {
            first_failure = row.clone();
        }
        rows.push(row);
    }
    let status = Status::from_bool(first_failure.is_null());
    let mut details = json!({ "weights": rows });
    if !first_failure.is_null() {
        details["first_failure"] = first_failure;
    }
    Ok(Report {
        case: p.case.clone(),
        check: CheckKind::Kernel,
        k_range: range(weights.get(1).copied().unwrap_or(top), top),
        precision: prec,
        status,
        details,
        elapsed_ms: elapsed(t),
    })
}

pub fn verify_hilbert(catalog: &Catalog, p: &Presentation, opts: &Options) -> Result<Report> {
    let t = Instant::now();
    let hs = p.hilbert.as_ref().ok_or_else(|| CatalogError::Invalid(format!("case {} has no Hilbert series", p.case)))?;
    let max_doubled = 2 * opts.horizon as usize;
    let expected: Vec<Expected> =
        (0..=max_doubled).map(|d| catalog.expected(&p.group, HalfWeight::from_doubled(d as u32))).collect::<Result<_>>()?;
    let mismatches = hs.compare(max_doubled, |w| expected[w.doubled() as usize]);
    let nonneg = hs.is_nonnegative(max_doubled);
    let step = if p.group.half_integral { 1 } else { 2 };
    let expansion: Vec<i64> = hs.expand_doubled(max_doubled).into_iter().step_by(step).collect();
    let dims: Vec<Value> = expected
        .iter()
        .step_by(step)
        .map(|e| match e {
            Expected::Dim(d) => json!(d),
            Expected::Zero => json!(0),
            Expected::Skip => Value::Null,
        })
        .collect();
    let mut details = json!({
        "series": hs.to_string(),
        "expansion": expansion,
        "dims": dims,
        "nonnegative": nonneg,
    });
    if let Some(m) = mismatches.first() {
        details["first_failure"] = json!({ "weight": weight_json(m.weight), "series": m.series, "dim": m.expected });
    }
    Ok(Report {
        case: p.case.clone(),
        check: CheckKind::Hilbert,
        k_range: range(HalfWeight::from_doubled(0), HalfWeight::integral(opts.horizon)),
        precision: 0,
        status: Status::from_bool(mismatches.is_empty() && nonneg),
        details,
        elapsed_ms: elapsed(t),
    })
}

pub fn verify_identity(catalog: &Catalog, id: &Identity, opts: &Options) -> Result<Report> {
    let t = Instant::now();
    let mut rows = vec![];
    let mut ok = true;
    let mut max_prec = 0;
    let (mut lo, mut hi) = (u32::MAX, 0);
    for c in &id.claims {
        let needed = c.group.sturm_prec(c.weight);
        let prec = opts.precision(needed)?;
        max_prec = max_prec.max(prec);
        lo = lo.min(c.weight.doubled());
        hi = hi.max(c.weight.doubled());
        let ctx = FieldCtx::new(c.conductor);
        let s = Evaluator::new(catalog, &ctx).eval(&c.expr, prec)?;
        let nz = first_nonzero(&s);
        ok &= nz.is_none();
        rows.push(json!({
            "expr": c.source,
            "group": c.group.to_string(),
            "weight": weight_json(c.weight),
            "sturm": needed,
            "vanishes": nz.is_none(),
            "first_nonzero": nz,
        }));
    }
    Ok(Report {
        case: id.name.clone(),
        check: CheckKind::Identity,
        k_range: range(HalfWeight::from_doubled(lo), HalfWeight::from_doubled(hi)),
        precision: max_prec,
        status: Status::from_bool(ok),
        details: json!({ "description": id.description, "claims": rows }),
        elapsed_ms: elapsed(t),
    })
}

/// Whether a form lies in `q + Z[[q]] q^2` to the given precision.
pub fn verify_integrality(catalog: &Catalog, name: &str, prec: usize) -> Result<Report> {
    let t = Instant::now();
    let def = catalog.form(name);
    let (orders, weight) = match def {
        Ok(d) => (d.root_orders.clone(), d.weight),
        Err(CatalogError::UnknownForm(_)) => {
            let e = modring_catalog::expr::atom(name).map_err(|_| CatalogError::UnknownForm(name.to_string()))?;
            (catalog.expr_root_orders(&e)?, catalog.expr_weight(&e)?)
        }
        Err(e) => return Err(e),
    };
    let ctx: Arc<FieldCtx> = FieldCtx::new(conductor_for(&orders));
    let s = Evaluator::new(catalog, &ctx).form(name, prec)?;
    let c0 = s.coeff(0).is_zero();
    let c1 = s.prec() > 1 && s.coeff(1).is_one();
    let bad = s.coeffs().iter().position(|c| c.to_integer().is_none());
    let ok = c0 && c1 && bad.is_none();
    let mut details = json!({ "constant_term_zero": c0, "leading_one": c1, "all_integral": bad.is_none() });
    if !ok {
        let at = if !c0 { 0 } else if !c1 { 1 } else { bad.expect("some check failed") };
        details["first_failure"] = json!({ "index": at, "coefficient": s.coeff(at).to_string() });
    }
    Ok(Report {
        case: name.to_string(),
        check: CheckKind::Integrality,
        k_range: range(weight, weight),
        precision: prec,
        status: Status::from_bool(ok),
        details,
        elapsed_ms: elapsed(t),
    })
}
