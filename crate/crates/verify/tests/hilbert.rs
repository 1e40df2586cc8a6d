//! Hilbert series of the catalog and of the quotient lemmas, checked against
//! monomial counts and ideal ranks.

use modring_catalog::Catalog;
use modring_core::hilbert::HilbertSeries;
use modring_core::{FieldCtx, HalfWeight};
use modring_verify::*;

fn integral(d: &[i64]) -> Vec<i64> {
    d.iter().copied().step_by(2).collect()
}

#[test]
fn catalog_series_match_dimensions() {
    let c = Catalog::builtin();
    let mut n = 0;
    for p in c.presentations().iter().filter(|p| p.hilbert.is_some()) {
        let r = verify_hilbert(c, p, &Options::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        n += 1;
    }
    assert!(n >= 12);
}

#[test]
fn free_series_counts_monomials() {
    for ws in [vec![4u32, 6], vec![2, 2, 2], vec![1, 4], vec![2, 2, 4, 6], vec![1, 1, 3, 3]] {
        let w: Vec<HalfWeight> = ws.iter().map(|&d| HalfWeight::from_doubled(d)).collect();
        assert_eq!(HilbertSeries::free(&w).expand_doubled(40), monomial_counts(&w, 40), "{ws:?}");
    }
    let level_one = HilbertSeries::integral(&[1], &[4, 6]).unwrap();
    let c = Catalog::builtin();
    let full = "full".parse().unwrap();
    for k in 0..=20u32 {
        let want = c.dim(&full, HalfWeight::integral(k)).unwrap_or(0);
        assert_eq!(level_one.expand(20)[k as usize], want, "k = {k}");
    }
}

#[test]
fn lemma4_examples() {
    let one = HalfWeight::integral(1);
    // (1 + t) / (1 - t)^2 = sum (2k + 1) t^k
    let s = HilbertSeries::free(&[one, one]).apply_lemma4(one);
    assert_eq!(s.expand(20), (0..=20).map(|k| 2 * k + 1).collect::<Vec<_>>());
    // (1 + t^2) / (1 - t)^2 = 1 + sum 2k t^k
    let s = HilbertSeries::free(&[one, one]).apply_lemma4(HalfWeight::integral(2));
    let want: Vec<i64> = (0..=20).map(|k| if k == 0 { 1 } else { 2 * k }).collect();
    assert_eq!(s.expand(20), want);
    // both agree with a conic in three variables
    let ctx = FieldCtx::new(1);
    let (w, rels) = lemma5_relations(&ctx, 2);
    assert_eq!(integral(&quotient_dims(&ctx, &w, &rels, 40).unwrap()), (0..=20).map(|k| 2 * k + 1).collect::<Vec<_>>());
}

#[test]
fn lemma5_against_the_ideal() {
    let ctx = FieldCtx::new(1);
    for n in 1..=5u32 {
        let (w, rels) = lemma5_relations(&ctx, n as usize);
        let horizon = if n <= 3 { 6 } else { 4 };
        let dims = integral(&quotient_dims(&ctx, &w, &rels, 2 * horizon).unwrap());
        let series = HilbertSeries::lemma5(n).expand(horizon as usize);
        let want: Vec<i64> = (0..=horizon as i64).map(|k| n as i64 * k + 1).collect();
        assert_eq!(series, want, "n = {n}");
        assert_eq!(dims, want, "n = {n}");
        // monomials minus ideal equals the quotient
        let counts = integral(&monomial_counts(&w, 2 * horizon as usize));
        for k in 0..=horizon as usize {
            let id = ideal_dim(&ctx, &w, &rels, HalfWeight::integral(k as u32)).unwrap() as i64;
            assert_eq!(counts[k] - id, want[k]);
        }
    }
}

#[test]
fn lemma6_quoted_sequence_and_quotient() {
    let quoted: Vec<i64> = (0..=20).map(|k| k + k / 2 + 1).collect();
    let mut seq = vec![0; 41];
    for (k, &v) in quoted.iter().enumerate() {
        seq[2 * k] = v;
    }
    let one = HalfWeight::integral(1);
    let two = HalfWeight::integral(2);
    let fitted = HilbertSeries::fit(&seq, &[one, two]).unwrap();
    assert_eq!(fitted.expand(20), quoted);
    assert!(fitted.is_nonnegative(40));

    let ctx = FieldCtx::new(1);
    let (w, rels) = lemma6_relations(&ctx);
    let actual = integral(&quotient_dims(&ctx, &w, &rels, 20).unwrap());
    let decomposition: Vec<i64> = (0..=10).map(|k| k + 2 * (k / 2) + 1).collect();
    assert_eq!(actual, decomposition);
    assert_eq!(actual[..2], quoted[..2]);
    assert_ne!(actual[2], quoted[2]);
}

#[test]
fn fit_recovers_catalog_numerators() {
    let c = Catalog::builtin();
    for p in c.presentations().iter().filter(|p| p.hilbert.is_some()) {
        let hs = p.hilbert.as_ref().unwrap();
        let seq = hs.expand_doubled(60);
        let den: Vec<HalfWeight> = hs.denominator().iter().map(|&d| HalfWeight::from_doubled(d)).collect();
        let fitted = HilbertSeries::fit(&seq, &den).unwrap();
        assert_eq!(fitted.numerator(), hs.numerator(), "{}", p.case);
    }
}
