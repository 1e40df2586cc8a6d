//! Polynomials in named generators with coefficients in `Q(zeta_L)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use modring_core::{CycloNum, FieldCtx, HalfWeight, RootOfUnity};

use crate::error::{CatalogError, Result};
use crate::infix::Infix;

pub type Monomial = Vec<u32>;

#[derive(Clone)]
pub struct GenPoly {
    ctx: Arc<FieldCtx>,
    nvars: usize,
    terms: BTreeMap<Monomial, CycloNum>,
}

/// How variable names resolve while building a [`GenPoly`].
pub struct PolyScope<'a> {
    pub ctx: &'a Arc<FieldCtx>,
    pub vars: &'a [String],
    /// `conj[i]` is the variable whose series is the conjugate of variable `i`.
    pub conj: &'a [Option<usize>],
    pub aliases: &'a HashMap<String, GenPoly>,
}

impl GenPoly {
    pub fn zero(ctx: &Arc<FieldCtx>, nvars: usize) -> Self {
        GenPoly { ctx: ctx.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: CycloNum, nvars: usize) -> Self {
        let mut p = GenPoly::zero(c.ctx(), nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(ctx: &Arc<FieldCtx>, nvars: usize, i: usize) -> Self {
        GenPoly::monomial(ctx, {
            let mut e = vec![0; nvars];
            e[i] = 1;
            e
        })
    }

    pub fn monomial(ctx: &Arc<FieldCtx>, e: Monomial) -> Self {
        let nvars = e.len();
        let mut p = GenPoly::zero(ctx, nvars);
        p.terms.insert(e, CycloNum::one(ctx));
        p
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CycloNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> CycloNum {
        self.terms.get(e).cloned().unwrap_or_else(|| CycloNum::zero(&self.ctx))
    }

    fn add_term(&mut self, e: Monomial, c: CycloNum) {
        if let Some(old) = self.terms.get_mut(&e) {
            *old += &c;
            if old.is_zero() {
                self.terms.remove(&e);
            }
        } else if !c.is_zero() {
            self.terms.insert(e, c);
        }
    }

    pub fn add(&self, other: &GenPoly) -> GenPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> GenPoly {
        GenPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, other: &GenPoly) -> GenPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GenPoly) -> GenPoly {
        let mut out = GenPoly::zero(&self.ctx, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &CycloNum) -> GenPoly {
        let mut out = GenPoly::zero(&self.ctx, self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> GenPoly {
        let mut out = GenPoly::constant(CycloNum::one(&self.ctx), self.nvars);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Multiply by the monomial with exponent vector `e`.
    pub fn shift(&self, e: &[u32]) -> GenPoly {
        GenPoly {
            ctx: self.ctx.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    /// Complex conjugation of coefficients combined with the variable swap `conj`.
    pub fn conj(&self, conj: &[Option<usize>], names: &[String]) -> Result<GenPoly> {
        let mut out = GenPoly::zero(&self.ctx, self.nvars);
        for (e, c) in &self.terms {
            let mut m = vec![0; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = conj[i].ok_or_else(|| {
                    CatalogError::Invalid(format!("no conjugate partner declared for generator {}", names[i]))
                })?;
                m[j] += x;
            }
            out.add_term(m, c.conj());
        }
        Ok(out)
    }

    /// Common doubled weight of all terms, or an error naming the offending pair.
    pub fn homogeneous_weight(&self, weights: &[HalfWeight]) -> Result<Option<HalfWeight>> {
        let mut seen: Option<u32> = None;
        for e in self.terms.keys() {
            let w: u32 = e.iter().zip(weights).map(|(x, w)| x * w.doubled()).sum();
            match seen {
                None => seen = Some(w),
                Some(s) if s != w => {
                    return Err(CatalogError::Weight {
                        context: format!("{self}"),
                        message: format!("terms of weights {} and {}", HalfWeight::from_doubled(s), HalfWeight::from_doubled(w)),
                    })
                }
                _ => {}
            }
        }
        Ok(seen.map(HalfWeight::from_doubled))
    }

    pub fn from_infix(e: &Infix, scope: &PolyScope) -> Result<GenPoly> {
        let n = scope.vars.len();
        let ctx = scope.ctx;
        Ok(match e {
            Infix::Num(r) => GenPoly::constant(CycloNum::from_rational(ctx, r), n),
            Infix::Zeta(a, b) => GenPoly::constant(CycloNum::from_root(ctx, RootOfUnity::new(*a, *b))?, n),
            Infix::Var(v) => {
                if let Some(i) = scope.vars.iter().position(|x| x == v) {
                    GenPoly::var(ctx, n, i)
                } else if let Some(p) = scope.aliases.get(v) {
                    p.clone()
                } else {
                    return Err(CatalogError::UnknownForm(v.clone()));
                }
            }
            Infix::Add(a, b) => GenPoly::from_infix(a, scope)?.add(&GenPoly::from_infix(b, scope)?),
            Infix::Sub(a, b) => GenPoly::from_infix(a, scope)?.sub(&GenPoly::from_infix(b, scope)?),
            Infix::Mul(a, b) => GenPoly::from_infix(a, scope)?.mul(&GenPoly::from_infix(b, scope)?),
            Infix::Div(a, b) => {
                let d = GenPoly::from_infix(b, scope)?;
                let c = d.as_constant().ok_or_else(|| CatalogError::Invalid("division by a non-constant".into()))?;
                GenPoly::from_infix(a, scope)?.scale(&c.inv()?)
            }
            Infix::Neg(a) => GenPoly::from_infix(a, scope)?.neg(),
            Infix::Pow(a, k) => GenPoly::from_infix(a, scope)?.pow(*k),
            Infix::Conj(a) => GenPoly::from_infix(a, scope)?.conj(scope.conj, scope.vars)?,
        })
    }

    pub fn as_constant(&self) -> Option<CycloNum> {
        match self.terms.len() {
            0 => Some(CycloNum::zero(&self.ctx)),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(j, &x)| if x == 1 { names[j].clone() } else { format!("{}^{x}", names[j]) })
                .collect();
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(b) if c.term_count() == 1 => (true, b.to_string()),
                _ => (false, cs.clone()),
            };
            let coef = if c.term_count() > 1 { format!("({cs})") } else { body };
            let term = match (mono.is_empty(), coef.as_str()) {
                (true, _) => coef.clone(),
                (false, "1") => mono.join("*"),
                (false, _) => format!("{coef}*{}", mono.join("*")),
            };
            if i == 0 {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

impl PartialEq for GenPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.conductor() == other.ctx.conductor() && self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Eq for GenPoly {}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

impl fmt::Debug for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenPoly({self})")
    }
}

/// Evaluate an infix expression without variables to a field element.
pub fn eval_scalar(ctx: &Arc<FieldCtx>, e: &Infix) -> Result<CycloNum> {
    let scope = PolyScope { ctx, vars: &[], conj: &[], aliases: &HashMap::new() };
    let p = GenPoly::from_infix(e, &scope)?;
    p.as_constant().ok_or_else(|| CatalogError::Invalid("scalar expression has variables".into()))
}
