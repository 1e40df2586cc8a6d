//! Evaluation of form expressions to q-expansions.

use std::collections::HashMap;
use std::sync::Arc;

use modring_core::constructors::{alpha23, eis_f, eis_g, eis_g2, eisenstein_c, eisenstein_e, theta, theta_bqf};
use modring_core::arith::rat;
use modring_core::{FieldCtx, QSeries};

use crate::catalog::Catalog;
use crate::error::{CatalogError, Result};
use crate::expr::{atom, Ctor, Expr};
use crate::poly::eval_scalar;

/// Evaluates named forms over one field, caching the longest expansion seen per name.
pub struct Evaluator<'a> {
    catalog: &'a Catalog,
    ctx: Arc<FieldCtx>,
    cache: HashMap<String, QSeries>,
}

impl<'a> Evaluator<'a> {
    pub fn new(catalog: &'a Catalog, ctx: &Arc<FieldCtx>) -> Self {
        Evaluator { catalog, ctx: ctx.clone(), cache: HashMap::new() }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn catalog(&self) -> &'a Catalog {
        self.catalog
    }

    /// A catalog form or a constructor call such as `f[1;chi5]`.
    pub fn form(&mut self, name: &str, prec: usize) -> Result<QSeries> {
        if let Some(s) = self.cache.get(name) {
            if s.prec() >= prec {
                return Ok(s.truncate(prec));
            }
        }
        let series = match self.catalog.form(name) {
            Ok(def) => {
                if def.quasi_modular {
                    return Err(CatalogError::QuasiModular(name.to_string()));
                }
                let expr = def.expr.clone();
                self.eval(&expr, prec)?
            }
            Err(CatalogError::UnknownForm(_)) => match atom(name) {
                Ok(Expr::Ctor(c)) => self.ctor(&c, prec)?,
                _ => return Err(CatalogError::UnknownForm(name.to_string())),
            },
            Err(e) => return Err(e),
        };
        self.cache.insert(name.to_string(), series.clone());
        Ok(series)
    }

    pub fn eval(&mut self, expr: &Expr, prec: usize) -> Result<QSeries> {
        Ok(match expr {
            Expr::Ctor(c) => self.ctor(c, prec)?,
            Expr::Ref(n) => self.form(n, prec)?,
            Expr::Add(v) => {
                let mut acc = self.eval(&v[0], prec)?;
                for e in &v[1..] {
                    acc = acc.checked_add(&self.eval(e, prec)?)?;
                }
                acc
            }
            Expr::Sub(a, b) => self.eval(a, prec)?.checked_sub(&self.eval(b, prec)?)?,
            Expr::Mul(v) => {
                let mut acc = self.eval(&v[0], prec)?;
                for e in &v[1..] {
                    acc = acc.checked_mul(&self.eval(e, prec)?)?;
                }
                acc
            }
            Expr::Pow(a, n) => self.eval(a, prec)?.pow(*n),
            Expr::Scale(s, a) => {
                let c = eval_scalar(&self.ctx, s)?;
                self.eval(a, prec)?.scale(&c)?
            }
            Expr::Neg(a) => self.eval(a, prec)?.scale_rational(&rat(-1, 1)),
            Expr::V(h, a) => {
                let inner = prec.saturating_sub(1).div_ceil(*h) + 1;
                self.eval(a, inner)?.v_operator(*h).truncate(prec)
            }
            Expr::Lower(h, a) => self.eval(a, prec)?.lowered(*h)?,
            Expr::Conj(a) => self.eval(a, prec)?.conj_series(),
        })
    }

    fn ctor(&mut self, c: &Ctor, prec: usize) -> Result<QSeries> {
        let ctx = &self.ctx;
        Ok(match c {
            Ctor::E(k) => eisenstein_e(ctx, *k, prec)?,
            Ctor::C(n) => eisenstein_c(ctx, *n, prec)?,
            Ctor::F(k, chi) => eis_f(ctx, *k, chi, prec)?,
            Ctor::G(k, chi) => eis_g(ctx, *k, chi, prec)?,
            Ctor::G2(k, chi, psi) => eis_g2(ctx, *k, chi, psi, prec)?,
            Ctor::Theta(h) => theta(ctx, prec.saturating_sub(1).div_ceil(*h) + 1).v_operator(*h).truncate(prec),
            Ctor::Alpha23 => alpha23(ctx, prec),
            Ctor::Bqf(a, b, c) => theta_bqf(ctx, *a, *b, *c, prec)?,
        })
    }
}
