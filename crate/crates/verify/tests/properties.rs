//! Randomized invariants of the verification engine, with fixed seeds.

use modring_catalog::Catalog;
use modring_core::arith::rat;
use modring_core::linalg;
use modring_core::{CycloNum, FieldCtx, HalfWeight, QSeries};
use modring_verify::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x6d6f_6472), failure_persistence: None, ..Config::default() }
}

const SPAN_CASES: &[&str] = &["N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8h", "N9", "N11h3", "N14h9", "N18h7"];
const RELATION_CASES: &[&str] = &["N7", "N9", "N10", "N11h3", "N12h", "N14h9", "N18h7"];

fn matrix(ctx: &std::sync::Arc<FieldCtx>, rows: &[Vec<(i64, i64)>], ncols: usize) -> linalg::Matrix {
    rows.iter()
        .map(|r| {
            r.iter()
                .take(ncols)
                .map(|&(a, b)| {
                    let deg = ctx.degree();
                    let mut c = vec![rat(0, 1); deg];
                    c[0] = rat(a, 1);
                    if deg > 1 {
                        c[1] = rat(b, 1);
                    }
                    CycloNum::from_coords(ctx, &c).unwrap()
                })
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn rank_nullity(l in prop::sample::select(&[1u32, 4, 6][..]),
                    rows in prop::collection::vec(prop::collection::vec((-3i64..3, -2i64..2), 6), 1..8),
                    ncols in 1usize..6) {
        let ctx = FieldCtx::new(l);
        let m = matrix(&ctx, &rows, ncols);
        let rank = linalg::rank(&m, ncols).unwrap();
        let null = linalg::left_nullspace(&ctx, &m, ncols).unwrap();
        prop_assert_eq!(rank + null.len(), m.len());
        prop_assert!(rank <= ncols);
        for v in &null {
            for j in 0..ncols {
                let s = v.iter().zip(&m).fold(CycloNum::zero(&ctx), |acc, (c, row)| acc + c * &row[j]);
                prop_assert!(s.is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn rank_stabilizes_at_sturm_precision(case in prop::sample::select(SPAN_CASES), w in 0u32..9, extra in 1usize..20) {
        let c = Catalog::builtin();
        let p = c.presentation(case).unwrap();
        let w = HalfWeight::from_doubled(if p.group.half_integral { w } else { 2 * w });
        let sturm = p.group.sturm_prec(w);
        prop_assert_eq!(span_rank(c, p, w, sturm).unwrap(), span_rank(c, p, w, sturm + extra).unwrap());
    }

    #[test]
    fn rank_is_invariant_under_generator_scaling(case in prop::sample::select(SPAN_CASES), w in 1u32..7,
                                                  scales in prop::collection::vec((1i64..9, 1i64..5, any::<bool>()), 6)) {
        let c = Catalog::builtin();
        let p = c.presentation(case).unwrap();
        let w = HalfWeight::from_doubled(if p.group.half_integral { w } else { 2 * w });
        let prec = p.group.sturm_prec(w) + DEFAULT_GUARD;
        let mut ge = GenEval::new(c, p, prec).unwrap();
        let base = ge.span_rank(w).unwrap();
        let gens: Vec<QSeries> = p.gens.iter().zip(&scales)
            .map(|(g, &(n, d, neg))| {
                let s = modring_catalog::Evaluator::new(c, &p.ctx).form(g, prec).unwrap();
                s.scale_rational(&rat(if neg { -n } else { n }, d))
            })
            .collect();
        let mut scaled = GenEval::from_series(&p.ctx, gens, p.weights.clone(), prec);
        prop_assert_eq!(scaled.span_rank(w).unwrap(), base);
    }

    #[test]
    fn relation_multiples_vanish(case in prop::sample::select(RELATION_CASES), which in 0usize..8,
                                 shift in prop::collection::vec(0u32..2, 6)) {
        let c = Catalog::builtin();
        let p = c.presentation(case).unwrap();
        let r = &p.relations[which % p.relations.len()];
        let e: Vec<u32> = shift.iter().take(p.gens.len()).copied().collect();
        let poly = r.poly.shift(&e);
        let w = poly.homogeneous_weight(&p.weights).unwrap().unwrap();
        let prec = vanishing_prec(&p.group, w);
        let mut ge = GenEval::new(c, p, prec).unwrap();
        prop_assert!(ge.eval_poly(&poly).unwrap().is_zero());
    }
}

#[test]
fn weighted_monomials_match_counts() {
    for ws in [vec![2u32, 2, 4], vec![1, 4], vec![2, 2, 2, 2], vec![1, 1, 3]] {
        let w: Vec<HalfWeight> = ws.iter().map(|&d| HalfWeight::from_doubled(d)).collect();
        let counts = monomial_counts(&w, 24);
        for d in 0..=24u32 {
            let mons = weighted_monomials(&w, HalfWeight::from_doubled(d));
            assert_eq!(mons.len() as i64, counts[d as usize]);
            for m in &mons {
                assert_eq!(m.iter().zip(&ws).map(|(a, b)| a * b).sum::<u32>(), d);
            }
        }
    }
}
