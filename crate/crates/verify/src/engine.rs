//! Evaluation of generator polynomials to q-series.

use std::collections::HashMap;
use std::sync::Arc;

use modring_catalog::{Catalog, Evaluator, GenPoly, Presentation, Result};
use modring_core::linalg::{self, Matrix};
use modring_core::{CycloNum, FieldCtx, HalfWeight, QSeries};

use crate::monomials::weighted_monomials;

/// Generator q-expansions at a fixed precision, with a cache of monomial products.
pub struct GenEval {
    ctx: Arc<FieldCtx>,
    prec: usize,
    gens: Vec<QSeries>,
    weights: Vec<HalfWeight>,
    cache: HashMap<Vec<u32>, QSeries>,
}

impl GenEval {
    pub fn new(catalog: &Catalog, p: &Presentation, prec: usize) -> Result<Self> {
        let mut ev = Evaluator::new(catalog, &p.ctx);
        let gens = p.gens.iter().map(|g| ev.form(g, prec)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_series(&p.ctx, gens, p.weights.clone(), prec))
    }

    pub fn from_series(ctx: &Arc<FieldCtx>, gens: Vec<QSeries>, weights: Vec<HalfWeight>, prec: usize) -> Self {
        let gens = gens.into_iter().map(|g| g.truncate(prec)).collect();
        GenEval { ctx: ctx.clone(), prec, gens, weights, cache: HashMap::new() }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn weights(&self) -> &[HalfWeight] {
        &self.weights
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn monomial(&mut self, e: &[u32]) -> Result<QSeries> {
        if let Some(s) = self.cache.get(e) {
            return Ok(s.clone());
        }
        let s = match e.iter().rposition(|&x| x > 0) {
            None => QSeries::one(&self.ctx, self.prec),
            Some(i) => {
                let mut parent = e.to_vec();
                parent[i] -= 1;
                self.monomial(&parent)?.checked_mul(&self.gens[i])?
            }
        };
        self.cache.insert(e.to_vec(), s.clone());
        Ok(s)
    }

    pub fn eval_poly(&mut self, p: &GenPoly) -> Result<QSeries> {
        let mut acc = QSeries::zero(&self.ctx, self.prec);
        for (e, c) in p.terms() {
            acc = acc.checked_add(&self.monomial(e)?.scale(c)?)?;
        }
        Ok(acc)
    }

    /// Rows of q-coefficients of the weight-`k` monomials, in `weighted_monomials` order.
    pub fn monomial_matrix(&mut self, k: HalfWeight) -> Result<(Vec<Vec<u32>>, Matrix)> {
        let mons = weighted_monomials(&self.weights, k);
        let rows = mons.iter().map(|e| Ok(self.monomial(e)?.coeffs().to_vec())).collect::<Result<Vec<_>>>()?;
        Ok((mons, rows))
    }

    /// Rank of the span of the weight-`k` monomials.
    pub fn span_rank(&mut self, k: HalfWeight) -> Result<usize> {
        let (_, m) = self.monomial_matrix(k)?;
        Ok(linalg::rank(&m, self.prec)?)
    }
}

/// Coefficient vector of a polynomial in the basis `mons`; `None` if a term falls outside it.
pub fn coeff_vector(ctx: &Arc<FieldCtx>, p: &GenPoly, index: &HashMap<Vec<u32>, usize>) -> Option<Vec<CycloNum>> {
    let mut v = vec![CycloNum::zero(ctx); index.len()];
    for (e, c) in p.terms() {
        v[*index.get(e)?] = c.clone();
    }
    Some(v)
}
