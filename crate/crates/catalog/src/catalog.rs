//! Catalog data model and loader.
//!
//! The file is TOML with four arrays of tables: `groups`, `forms`,
//! `identities` and `presentations` (plus informational `decompositions`).
//! Weights are written doubled, so `1` is weight 1/2 and `4` is weight 2.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use modring_core::hilbert::Expected;
use modring_core::{FieldCtx, HalfWeight, HilbertSeries};
use serde::Deserialize;

use crate::dimformula::DimExpr;
use crate::error::{CatalogError, Result};
use crate::expr::{conductor_for, Expr};
use crate::group::GroupSpec;
use crate::infix::Infix;
use crate::poly::{GenPoly, PolyScope};

const BUILTIN: &str = include_str!("../data/catalog.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    groups: Vec<RawGroup>,
    forms: Vec<RawForm>,
    #[serde(default)]
    identities: Vec<RawIdentity>,
    #[serde(default)]
    presentations: Vec<RawPresentation>,
    #[serde(default)]
    decompositions: Vec<Decomposition>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    group: String,
    dim: Option<String>,
    domain: Option<String>,
    half_rule: Option<String>,
    half_offset: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    name: String,
    weight: u32,
    group: Option<String>,
    #[serde(rename = "char")]
    character: Option<String>,
    expr: String,
    note: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdentity {
    name: String,
    description: String,
    claims: Vec<RawClaim>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClaim {
    group: String,
    weight: u32,
    conductor: u32,
    expr: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNamedPoly {
    name: String,
    poly: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    case: String,
    description: String,
    group: String,
    conductor: u32,
    base: Option<String>,
    gens: Vec<String>,
    #[serde(default)]
    conj_pairs: Vec<[String; 2]>,
    #[serde(default)]
    aliases: Vec<RawNamedPoly>,
    #[serde(default)]
    relations: Vec<RawNamedPoly>,
    #[serde(default)]
    relations_unknown: bool,
    hilbert_num: Option<Vec<i64>>,
    hilbert_den: Option<Vec<u32>>,
    kmax: u32,
    kernel_kmax: Option<u32>,
    checks: Vec<String>,
}

/// Informational decomposition of a space into character eigenspaces; never verified.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Decomposition {
    pub group: String,
    pub parity: String,
    pub summands: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `k` even and nonnegative.
    Even,
    /// `k >= 0`.
    NonNeg,
    /// `k >= 1`.
    Pos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfRule {
    /// `dim M_{k+1/2} = offset + dim M_k`.
    Shift(i64),
    /// `dim M_kappa = [(d + 1) / 2]` with `d = dim M_{2 kappa}`.
    HalfOfSquare,
}

#[derive(Debug, Clone)]
pub struct DimRow {
    pub group: GroupSpec,
    pub source: String,
    pub formula: DimExpr,
    pub domain: Domain,
}

#[derive(Debug, Clone)]
pub struct FormDef {
    pub name: String,
    pub weight: HalfWeight,
    pub group: Option<String>,
    pub character: Option<String>,
    pub source: String,
    pub expr: Expr,
    pub note: Option<String>,
    /// Set when `E2` enters the definition, directly or through references.
    pub quasi_modular: bool,
    /// Orders of roots of unity the definition needs, references included.
    pub root_orders: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct Claim {
    pub group: GroupSpec,
    pub weight: HalfWeight,
    pub conductor: u32,
    pub source: String,
    pub expr: Expr,
}

#[derive(Debug, Clone)]
pub struct Identity {
    pub name: String,
    pub description: String,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone)]
pub struct Relation {
    pub name: String,
    pub source: String,
    pub poly: GenPoly,
    pub weight: HalfWeight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Span,
    Relations,
    Kernel,
    Hilbert,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Span => "span",
            Check::Relations => "relations",
            Check::Kernel => "kernel",
            Check::Hilbert => "hilbert",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Some(match s {
            "span" => Check::Span,
            "relations" => Check::Relations,
            "kernel" => Check::Kernel,
            "hilbert" => Check::Hilbert,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Presentation {
    pub case: String,
    pub description: String,
    pub group: GroupSpec,
    pub ctx: Arc<FieldCtx>,
    pub base: Option<String>,
    pub gens: Vec<String>,
    pub weights: Vec<HalfWeight>,
    /// `conj[i]`: index of the generator conjugate to generator `i`.
    pub conj: Vec<Option<usize>>,
    pub relations: Vec<Relation>,
    pub relations_unknown: bool,
    pub hilbert: Option<HilbertSeries>,
    /// Largest weight checked; half-integral cases also check `kmax + 1/2` and below.
    pub kmax: u32,
    pub kernel_kmax: u32,
    pub checks: Vec<Check>,
}

impl Presentation {
    pub fn conductor(&self) -> u32 {
        self.ctx.conductor()
    }

    /// Weights up to `kmax` in the case's weight lattice.
    pub fn weights_up_to(&self, kmax: u32) -> Vec<HalfWeight> {
        let step = if self.group.half_integral { 1 } else { 2 };
        (0..=2 * kmax).step_by(step).map(HalfWeight::from_doubled).collect()
    }

    pub fn runs(&self, check: Check) -> bool {
        self.checks.contains(&check)
    }
}

#[derive(Debug, Clone)]
pub struct Catalog {
    dims: Vec<DimRow>,
    half_rules: Vec<(GroupSpec, HalfRule)>,
    forms: BTreeMap<String, FormDef>,
    identities: Vec<Identity>,
    presentations: Vec<Presentation>,
    decompositions: Vec<Decomposition>,
}

fn parse_weight_spec(s: &str) -> Result<(String, HalfWeight)> {
    let (name, w) = s.rsplit_once(':').ok_or_else(|| CatalogError::parse(s, "expected name:doubled_weight"))?;
    let w: u32 = w.trim().parse().map_err(|_| CatalogError::parse(s, "bad doubled weight"))?;
    if w == 0 {
        return Err(CatalogError::parse(s, "generators need positive weight"));
    }
    Ok((name.trim().to_string(), HalfWeight::from_doubled(w)))
}

impl Catalog {
    /// The catalog compiled into the library.
    pub fn builtin() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::from_toml_str(BUILTIN).expect("built-in catalog is valid"))
    }

    pub fn builtin_source() -> &'static str {
        BUILTIN
    }

    pub fn load(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CatalogError::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Catalog::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Catalog> {
        let raw: RawCatalog = toml::from_str(text).map_err(|e| CatalogError::parse("catalog", e.to_string()))?;
        let mut cat = Catalog {
            dims: Vec::new(),
            half_rules: Vec::new(),
            forms: BTreeMap::new(),
            identities: Vec::new(),
            presentations: Vec::new(),
            decompositions: raw.decompositions,
        };
        for g in raw.groups {
            cat.add_group(g)?;
        }
        cat.add_forms(raw.forms)?;
        for id in raw.identities {
            cat.add_identity(id)?;
        }
        let mut raw_pres: HashMap<String, &RawPresentation> = HashMap::new();
        for p in &raw.presentations {
            if raw_pres.insert(p.case.clone(), p).is_some() {
                return Err(CatalogError::Invalid(format!("duplicate case {}", p.case)));
            }
        }
        for p in &raw.presentations {
            let pres = cat.build_presentation(p, &raw_pres)?;
            cat.presentations.push(pres);
        }
        Ok(cat)
    }

    fn add_group(&mut self, g: RawGroup) -> Result<()> {
        let group: GroupSpec = g.group.parse()?;
        if group.half_integral {
            let rule = match g.half_rule.as_deref() {
                Some("shift") => HalfRule::Shift(g.half_offset.unwrap_or(0)),
                Some("half_of_square") => HalfRule::HalfOfSquare,
                other => return Err(CatalogError::Invalid(format!("{}: bad half_rule {other:?}", g.group))),
            };
            self.half_rules.push((group, rule));
            return Ok(());
        }
        let source = g.dim.ok_or_else(|| CatalogError::Invalid(format!("{}: missing dim", g.group)))?;
        let domain = match g.domain.as_deref() {
            Some("even") => Domain::Even,
            Some("nonneg") => Domain::NonNeg,
            Some("pos") => Domain::Pos,
            other => return Err(CatalogError::Invalid(format!("{}: bad domain {other:?}", g.group))),
        };
        let formula = DimExpr::parse(&source)?;
        self.dims.push(DimRow { group, source, formula, domain });
        Ok(())
    }

    fn add_forms(&mut self, raw: Vec<RawForm>) -> Result<()> {
        let mut parsed = BTreeMap::new();
        for f in raw {
            let expr = Expr::parse(&f.expr).map_err(|e| CatalogError::Invalid(format!("form {}: {e}", f.name)))?;
            if crate::expr::atom(&f.name).map(|e| !matches!(e, Expr::Ref(_))).unwrap_or(true) {
                return Err(CatalogError::Invalid(format!("form name {:?} is reserved or malformed", f.name)));
            }
            let def = FormDef {
                name: f.name.clone(),
                weight: HalfWeight::from_doubled(f.weight),
                group: f.group,
                character: f.character,
                source: f.expr,
                expr,
                note: f.note,
                quasi_modular: false,
                root_orders: Vec::new(),
            };
            if parsed.insert(f.name.clone(), def).is_some() {
                return Err(CatalogError::Invalid(format!("duplicate form {}", f.name)));
            }
        }
        // topological order: a form is finalized after everything it references
        let mut done: HashSet<String> = HashSet::new();
        let names: Vec<String> = parsed.keys().cloned().collect();
        for name in &names {
            let mut stack = Vec::new();
            finalize(name, &mut parsed, &mut done, &mut stack)?;
        }
        self.forms = parsed;
        Ok(())
    }

    fn add_identity(&mut self, raw: RawIdentity) -> Result<()> {
        let mut claims = Vec::new();
        for c in raw.claims {
            let ctx = |e: CatalogError| CatalogError::Invalid(format!("identity {}: {e}", raw.name));
            let expr = Expr::parse(&c.expr).map_err(ctx)?;
            let weight = HalfWeight::from_doubled(c.weight);
            let inferred = self.expr_weight(&expr).map_err(ctx)?;
            if inferred != weight {
                return Err(ctx(CatalogError::Weight {
                    context: c.expr.clone(),
                    message: format!("declared {weight}, inferred {inferred}"),
                }));
            }
            self.check_modular(&expr).map_err(ctx)?;
            let orders = self.expr_root_orders(&expr)?;
            self.check_conductor(c.conductor, &orders, &raw.name)?;
            claims.push(Claim { group: c.group.parse()?, weight, conductor: c.conductor, source: c.expr, expr });
        }
        if self.identities.iter().any(|i| i.name == raw.name) {
            return Err(CatalogError::Invalid(format!("duplicate identity {}", raw.name)));
        }
        self.identities.push(Identity { name: raw.name, description: raw.description, claims });
        Ok(())
    }

    fn check_conductor(&self, l: u32, orders: &[u64], what: &str) -> Result<()> {
        for &o in orders {
            let ok = l as u64 % o == 0 || (l % 2 == 1 && 2 * l as u64 % o == 0);
            if !ok {
                return Err(CatalogError::Invalid(format!(
                    "{what}: conductor {l} lacks roots of unity of order {o} (needs {})",
                    conductor_for(orders)
                )));
            }
        }
        Ok(())
    }

    fn check_modular(&self, expr: &Expr) -> Result<()> {
        if expr.uses_e2() {
            return Err(CatalogError::QuasiModular("expression".into()));
        }
        let mut refs = Vec::new();
        expr.references(&mut refs);
        for r in refs {
            if self.form(&r)?.quasi_modular {
                return Err(CatalogError::QuasiModular(r));
            }
        }
        Ok(())
    }

    fn build_presentation(&self, p: &RawPresentation, all: &HashMap<String, &RawPresentation>) -> Result<Presentation> {
        let err = |m: String| CatalogError::Invalid(format!("case {}: {m}", p.case));
        // flatten the chain of base rings, innermost first
        let mut chain = vec![p];
        let mut cur = p;
        while let Some(b) = &cur.base {
            cur = all.get(b).ok_or_else(|| err(format!("unknown base {b}")))?;
            if chain.iter().any(|c| c.case == cur.case) {
                return Err(err("cyclic base".into()));
            }
            chain.push(cur);
        }
        chain.reverse();
        let group: GroupSpec = p.group.parse()?;
        let ctx = FieldCtx::new(p.conductor);
        let mut gens = Vec::new();
        let mut weights = Vec::new();
        for raw in &chain {
            for g in &raw.gens {
                let (name, w) = parse_weight_spec(g)?;
                if gens.contains(&name) {
                    return Err(err(format!("generator {name} listed twice")));
                }
                let inferred = self.expr_weight(&crate::expr::atom(&name)?).map_err(|e| err(e.to_string()))?;
                if inferred != w {
                    return Err(err(format!("generator {name}: declared weight {w}, catalog weight {inferred}")));
                }
                self.check_modular(&crate::expr::atom(&name)?).map_err(|e| err(e.to_string()))?;
                let orders = self.expr_root_orders(&crate::expr::atom(&name)?)?;
                self.check_conductor(p.conductor, &orders, &format!("case {} generator {name}", p.case))?;
                gens.push(name);
                weights.push(w);
            }
        }
        let mut conj: Vec<Option<usize>> = vec![None; gens.len()];
        for raw in &chain {
            for [a, b] in &raw.conj_pairs {
                let ia = gens.iter().position(|g| g == a).ok_or_else(|| err(format!("conj pair names unknown {a}")))?;
                let ib = gens.iter().position(|g| g == b).ok_or_else(|| err(format!("conj pair names unknown {b}")))?;
                conj[ia] = Some(ib);
                conj[ib] = Some(ia);
            }
        }
        let mut aliases: HashMap<String, GenPoly> = HashMap::new();
        let mut relations = Vec::new();
        for raw in &chain {
            for a in &raw.aliases {
                let scope = PolyScope { ctx: &ctx, vars: &gens, conj: &conj, aliases: &aliases };
                let poly = GenPoly::from_infix(&Infix::parse(&a.poly)?, &scope).map_err(|e| err(format!("alias {}: {e}", a.name)))?;
                poly.homogeneous_weight(&weights).map_err(|e| err(format!("alias {}: {e}", a.name)))?;
                aliases.insert(a.name.clone(), poly);
            }
            for r in &raw.relations {
                let scope = PolyScope { ctx: &ctx, vars: &gens, conj: &conj, aliases: &aliases };
                let infix = Infix::parse(&r.poly)?;
                let mut orders = Vec::new();
                infix.root_orders(&mut orders);
                self.check_conductor(p.conductor, &orders, &format!("relation {}", r.name))?;
                let poly = GenPoly::from_infix(&infix, &scope).map_err(|e| err(format!("relation {}: {e}", r.name)))?;
                let weight = poly
                    .homogeneous_weight(&weights)
                    .map_err(|e| err(format!("relation {}: {e}", r.name)))?
                    .ok_or_else(|| err(format!("relation {} is identically zero", r.name)))?;
                relations.push(Relation { name: r.name.clone(), source: r.poly.clone(), poly, weight });
            }
        }
        let hilbert = match (&p.hilbert_num, &p.hilbert_den) {
            (Some(num), Some(den)) => {
                let mut d = den.clone();
                d.sort_unstable();
                let mut g: Vec<u32> = weights.iter().map(|w| w.doubled()).collect();
                g.sort_unstable();
                if d != g {
                    return Err(err(format!("hilbert_den {den:?} does not match generator weights {g:?}")));
                }
                Some(HilbertSeries::new(num.clone(), den.clone())?)
            }
            (None, None) => None,
            _ => return Err(err("hilbert_num and hilbert_den go together".into())),
        };
        let checks = p
            .checks
            .iter()
            .map(|c| Check::parse(c).ok_or_else(|| err(format!("unknown check {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if checks.contains(&Check::Hilbert) && hilbert.is_none() {
            return Err(err("hilbert check without a claimed series".into()));
        }
        if p.relations_unknown && !p.relations.is_empty() {
            return Err(err("relations_unknown with relations listed".into()));
        }
        Ok(Presentation {
            case: p.case.clone(),
            description: p.description.clone(),
            group,
            ctx,
            base: p.base.clone(),
            gens,
            weights,
            conj,
            relations,
            relations_unknown: p.relations_unknown,
            hilbert,
            kmax: p.kmax,
            kernel_kmax: p.kernel_kmax.unwrap_or(p.kmax),
            checks,
        })
    }

    pub fn forms(&self) -> impl Iterator<Item = &FormDef> {
        self.forms.values()
    }

    pub fn form(&self, name: &str) -> Result<&FormDef> {
        self.forms.get(name).ok_or_else(|| CatalogError::UnknownForm(name.to_string()))
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn identity(&self, name: &str) -> Result<&Identity> {
        self.identities.iter().find(|i| i.name == name).ok_or_else(|| CatalogError::UnknownIdentity(name.to_string()))
    }

    pub fn presentations(&self) -> &[Presentation] {
        &self.presentations
    }

    pub fn presentation(&self, case: &str) -> Result<&Presentation> {
        self.presentations.iter().find(|p| p.case == case).ok_or_else(|| CatalogError::UnknownCase(case.to_string()))
    }

    pub fn dim_rows(&self) -> &[DimRow] {
        &self.dims
    }

    pub fn decompositions(&self) -> &[Decomposition] {
        &self.decompositions
    }

    pub fn half_rule(&self, group: &GroupSpec) -> Option<HalfRule> {
        self.half_rules.iter().find(|(g, _)| g == group).map(|(_, r)| *r)
    }

    pub fn has_dims(&self, group: &GroupSpec) -> bool {
        if group.half_integral {
            self.half_rule(group).is_some() && self.has_dims(&group.integral_part())
        } else {
            self.dims.iter().any(|r| &r.group == group)
        }
    }

    /// Weight of an expression, with form references resolved in this catalog.
    pub fn expr_weight(&self, expr: &Expr) -> Result<HalfWeight> {
        expr.weight(&|n| self.forms.get(n).map(|f| f.weight))
    }

    /// Root-of-unity orders needed by an expression, references included.
    pub fn expr_root_orders(&self, expr: &Expr) -> Result<Vec<u64>> {
        let mut orders = Vec::new();
        expr.root_orders(&mut orders);
        let mut refs = Vec::new();
        expr.references(&mut refs);
        for r in refs {
            orders.extend(self.form(&r)?.root_orders.iter().copied());
        }
        orders.sort_unstable();
        orders.dedup();
        Ok(orders)
    }

    /// Dimension from the table; errors outside a row's domain.
    pub fn dim(&self, group: &GroupSpec, weight: HalfWeight) -> Result<i64> {
        let out = |w: HalfWeight| CatalogError::OutOfTable { group: group.to_string(), weight: w.to_string() };
        if group.half_integral {
            let rule = self.half_rule(group).ok_or_else(|| CatalogError::UnknownGroup(group.to_string()))?;
            let base = group.integral_part();
            if weight.is_integral() {
                return self.dim(&base, weight);
            }
            let k = weight.doubled() / 2;
            return match rule {
                HalfRule::Shift(off) => Ok(off + self.dim(&base, HalfWeight::integral(k)).map_err(|_| out(weight))?),
                HalfRule::HalfOfSquare => {
                    let d = self.dim(&base, HalfWeight::integral(weight.doubled())).map_err(|_| out(weight))?;
                    Ok((d + 1) / 2)
                }
            };
        }
        let row = self.dims.iter().find(|r| &r.group == group).ok_or_else(|| CatalogError::UnknownGroup(group.to_string()))?;
        let k = weight.as_integer().ok_or_else(|| out(weight))? as i64;
        let ok = match row.domain {
            Domain::Even => k % 2 == 0,
            Domain::NonNeg => true,
            Domain::Pos => k >= 1,
        };
        if !ok {
            return Err(out(weight));
        }
        Ok(row.formula.eval(k))
    }

    /// What the graded piece of the given weight should have: the table value, zero
    /// off the weight lattice, or one at weight zero (constants).
    pub fn expected(&self, group: &GroupSpec, weight: HalfWeight) -> Result<Expected> {
        if !self.has_dims(group) {
            return Err(CatalogError::UnknownGroup(group.to_string()));
        }
        if weight.doubled() == 0 {
            return Ok(Expected::Dim(1));
        }
        if !group.half_integral && !weight.is_integral() {
            return Ok(Expected::Zero);
        }
        match self.dim(group, weight) {
            Ok(d) => Ok(Expected::Dim(d)),
            Err(CatalogError::OutOfTable { .. }) => {
                let row = self.dims.iter().find(|r| r.group == group.integral_part());
                match row.map(|r| r.domain) {
                    Some(Domain::Even) if weight.as_integer().is_some_and(|k| k % 2 == 1) => Ok(Expected::Zero),
                    _ => Ok(Expected::Skip),
                }
            }
            Err(e) => Err(e),
        }
    }
}

fn finalize(name: &str, forms: &mut BTreeMap<String, FormDef>, done: &mut HashSet<String>, stack: &mut Vec<String>) -> Result<()> {
    if done.contains(name) {
        return Ok(());
    }
    if stack.iter().any(|s| s == name) {
        return Err(CatalogError::Invalid(format!("cyclic definition through {}", stack.join(" -> "))));
    }
    let def = forms.get(name).ok_or_else(|| CatalogError::UnknownForm(name.to_string()))?.clone();
    let mut refs = Vec::new();
    def.expr.references(&mut refs);
    stack.push(name.to_string());
    for r in &refs {
        if !forms.contains_key(r) {
            return Err(CatalogError::Invalid(format!("form {name} references unknown form {r}")));
        }
        finalize(r, forms, done, stack)?;
    }
    stack.pop();
    let mut orders = Vec::new();
    def.expr.root_orders(&mut orders);
    let mut quasi = def.expr.uses_e2();
    for r in &refs {
        let d = &forms[r];
        orders.extend(d.root_orders.iter().copied());
        quasi |= d.quasi_modular;
    }
    orders.sort_unstable();
    orders.dedup();
    let inferred = def.expr.weight(&|n| forms.get(n).map(|f| f.weight)).map_err(|e| CatalogError::Invalid(format!("form {name}: {e}")))?;
    if inferred != def.weight {
        return Err(CatalogError::Weight {
            context: format!("form {name}"),
            message: format!("declared {}, inferred {inferred}", def.weight),
        });
    }
    let entry = forms.get_mut(name).expect("present");
    entry.root_orders = orders;
    entry.quasi_modular = quasi;
    done.insert(name.to_string());
    Ok(())
}
