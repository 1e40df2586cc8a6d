//! Degree-wise dimensions of ideals in weighted polynomial rings.

use std::collections::HashMap;
use std::sync::Arc;

use modring_catalog::{GenPoly, Result};
use modring_core::linalg::{self, Matrix};
use modring_core::{FieldCtx, HalfWeight};

use crate::engine::coeff_vector;
use crate::monomials::weighted_monomials;

/// Dimension of the weight-`k` part of the ideal generated by homogeneous `relations`.
pub fn ideal_dim(ctx: &Arc<FieldCtx>, weights: &[HalfWeight], relations: &[GenPoly], k: HalfWeight) -> Result<usize> {
    let mons = weighted_monomials(weights, k);
    let index: HashMap<Vec<u32>, usize> = mons.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows: Matrix = vec![];
    for r in relations {
        let Some(w) = r.homogeneous_weight(weights)? else { continue };
        if w.doubled() > k.doubled() {
            continue;
        }
        for e in weighted_monomials(weights, HalfWeight::from_doubled(k.doubled() - w.doubled())) {
            rows.push(coeff_vector(ctx, &r.shift(&e), &index).expect("multiples stay in weight k"));
        }
    }
    Ok(linalg::rank(&rows, mons.len())?)
}

/// `dim (C[X]/I)_k` for doubled weights `0..=max_doubled`.
pub fn quotient_dims(ctx: &Arc<FieldCtx>, weights: &[HalfWeight], relations: &[GenPoly], max_doubled: u32) -> Result<Vec<i64>> {
    (0..=max_doubled)
        .map(|d| {
            let k = HalfWeight::from_doubled(d);
            let n = weighted_monomials(weights, k).len();
            Ok((n - ideal_dim(ctx, weights, relations, k)?) as i64)
        })
        .collect()
}

/// `X_i X_{j+1} - X_{[(i+j+1)/2]} X_{[(i+j+2)/2]}` for `0 <= i < j < n`, in `X_0..X_n` of weight 1.
pub fn lemma5_relations(ctx: &Arc<FieldCtx>, n: usize) -> (Vec<HalfWeight>, Vec<GenPoly>) {
    let x = |i| GenPoly::var(ctx, n + 1, i);
    let mut rels = vec![];
    for j in 0..n {
        for i in 0..j {
            rels.push(x(i).mul(&x(j + 1)).sub(&x((i + j + 1) / 2).mul(&x((i + j + 2) / 2))));
        }
    }
    (vec![HalfWeight::integral(1); n + 1], rels)
}

/// `X_1^3 - X_2 Y_1`, `X_2^3 - X_1 Y_2`, `X_1^2 X_2^2 - Y_1 Y_2` with weights `[1, 1, 2, 2]`.
pub fn lemma6_relations(ctx: &Arc<FieldCtx>) -> (Vec<HalfWeight>, Vec<GenPoly>) {
    let v = |i| GenPoly::var(ctx, 4, i);
    let (x1, x2, y1, y2) = (v(0), v(1), v(2), v(3));
    let rels = vec![
        x1.pow(3).sub(&x2.mul(&y1)),
        x2.pow(3).sub(&x1.mul(&y2)),
        x1.pow(2).mul(&x2.pow(2)).sub(&y1.mul(&y2)),
    ];
    let w = [1, 1, 2, 2].map(HalfWeight::integral).to_vec();
    (w, rels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_quadric_in_three_variables() {
        let ctx = FieldCtx::new(1);
        let w = vec![HalfWeight::integral(1); 3];
        let x = |i| GenPoly::var(&ctx, 3, i);
        let q = x(0).mul(&x(2)).sub(&x(1).mul(&x(1)));
        // conic: 2k + 1
        let dims = quotient_dims(&ctx, &w, &[q], 10).unwrap();
        let integral: Vec<i64> = dims.into_iter().step_by(2).collect();
        assert_eq!(integral, vec![1, 3, 5, 7, 9, 11]);
    }
}
