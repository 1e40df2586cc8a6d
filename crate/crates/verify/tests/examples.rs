//! Worked examples with known ranks and kernels, plus negative controls.

use modring_catalog::{Catalog, CatalogError};
use modring_core::{FieldCtx, HalfWeight};
use modring_verify::*;

fn cat() -> &'static Catalog {
    Catalog::builtin()
}

fn k(n: u32) -> HalfWeight {
    HalfWeight::integral(n)
}

fn step(case: &str, w: HalfWeight) -> KernelStep {
    let c = cat();
    let p = c.presentation(case).unwrap();
    let prec = p.group.sturm_prec(w) + DEFAULT_GUARD;
    let mut ge = GenEval::new(c, p, prec).unwrap();
    kernel_step(&mut ge, p, w).unwrap()
}

#[test]
fn span_ranks() {
    let c = cat();
    let n5 = c.presentation("N5").unwrap();
    assert_eq!(span_rank(c, n5, k(3), 20).unwrap(), 4);
    let n1 = c.presentation("N1").unwrap();
    assert_eq!(span_rank(c, n1, k(12), 10).unwrap(), 2);
    assert_eq!(span_rank(c, n1, k(0), 10).unwrap(), 1);
    let n7 = c.presentation("N7").unwrap();
    let ranks: Vec<usize> = (0..5).map(|w| span_rank(c, n7, k(w), 30).unwrap()).collect();
    assert_eq!(ranks, vec![1, 3, 5, 7, 9]);
}

#[test]
fn span_rank_refuses_low_precision() {
    let c = cat();
    let p = c.presentation("N11h3").unwrap();
    let needed = p.group.sturm_prec(k(6));
    let err = span_rank(c, p, k(6), needed - 1).unwrap_err();
    assert!(matches!(err, CatalogError::PrecisionTooLow { given, needed: n } if given == needed - 1 && n == needed));
}

#[test]
fn kernel_examples() {
    let s = step("N11h3", k(6));
    assert_eq!((s.dim_kernel, s.dim_ideal), (1, 1));
    assert!(s.exhausted());

    let s = step("N7", k(2));
    assert_eq!((s.dim_kernel, s.dim_ideal, s.rank), (1, 1, 5));

    let s = step("N9", k(3));
    assert_eq!((s.monomials, s.rank), (20, 10));
    assert_eq!((s.dim_kernel, s.dim_ideal), (10, 10));
    let p = cat().presentation("N9").unwrap();
    let multiples: usize = p
        .relations
        .iter()
        .map(|r| weighted_monomials(&p.weights, HalfWeight::from_doubled(6 - r.weight.doubled())).len())
        .sum();
    assert_eq!(multiples, 12);
}

#[test]
fn kernel_is_monomials_minus_dimension() {
    let c = cat();
    for case in ["N7", "N9", "N11h3", "N14h9", "N18h7"] {
        let p = c.presentation(case).unwrap();
        let prec = p.group.sturm_prec(k(6)) + DEFAULT_GUARD;
        let mut ge = GenEval::new(c, p, prec).unwrap();
        for w in p.weights_up_to(6).into_iter().skip(1) {
            let s = kernel_step(&mut ge, p, w).unwrap();
            let dim = c.dim(&p.group, w).unwrap() as usize;
            assert_eq!(s.dim_kernel, s.monomials - dim, "{case} {w}");
            assert!(s.exhausted(), "{case} {w}");
        }
    }
}

#[test]
fn unknown_relations_are_skipped() {
    let c = cat();
    let p = c.presentation("N13h3").unwrap();
    assert!(matches!(verify_kernel(c, p, &Options::default()), Err(CatalogError::RelationsUnknown(_))));
    let opts = Options { kmax: Some(4), ..Options::default() };
    assert!(verify_span(c, p, &opts).unwrap().passed());
    let r = full_report(c, &[Task::Case { case: "N13h3".into(), check: modring_catalog::Check::Kernel }], &opts).remove(0);
    assert_eq!(r.status, Status::Skipped);
}

fn perturbed(from: &str, to: &str) -> Catalog {
    let src = Catalog::builtin_source();
    assert!(src.contains(from), "{from}");
    Catalog::from_toml_str(&src.replacen(from, to, 1)).unwrap()
}

#[test]
fn perturbed_relation_fails() {
    let c = perturbed("frho7^2 - fchi7*fchi7b", "frho7^2 - fchi7^2");
    let p = c.presentation("N7").unwrap();
    let r = verify_relations(&c, p, &Options::default()).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(r.details["first_failure"]["first_nonzero"].is_u64());
    let kr = verify_kernel(&c, p, &Options::default()).unwrap();
    assert_eq!(kr.status, Status::Fail);
}

#[test]
fn missing_generator_fails_span() {
    let c = perturbed("gens = [\"frho4:2\", \"alpha4:4\"]", "gens = [\"frho4:2\"]");
    let p = c.presentation("N4").unwrap();
    let r = verify_span(&c, p, &Options::default()).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.details["first_failure"]["weight"], 2);
}

#[test]
fn wrong_hilbert_numerator_fails() {
    let c = perturbed("hilbert_num = [1, 0, 0, 0, -3, 0, 2]", "hilbert_num = [1, 0, 0, 0, -3, 0, 3]");
    let p = c.presentation("N9").unwrap();
    assert_eq!(verify_hilbert(&c, p, &Options::default()).unwrap().status, Status::Fail);
}

#[test]
fn wrong_identity_fails() {
    let c = perturbed("(scale 192 alpha2)", "(scale 191 alpha2)");
    let id = c.identities().iter().find(|i| i.claims.iter().any(|cl| cl.source.contains("191"))).unwrap();
    let r = verify_identity(&c, id, &Options::default()).unwrap();
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn integrality() {
    let c = cat();
    assert!(verify_integrality(c, "alpha1", INTEGRALITY_PREC).unwrap().passed());
    assert!(verify_integrality(c, "alpha7", INTEGRALITY_PREC).unwrap().passed());
    let r = verify_integrality(c, "f[1;chi5]", INTEGRALITY_PREC).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.details["first_failure"]["index"], 0);
}

#[test]
fn precision_override_below_sturm_is_a_config_error() {
    let c = cat();
    let opts = Options { prec: Some(3), ..Options::default() };
    let task = Task::Case { case: "N9".into(), check: modring_catalog::Check::Relations };
    assert!(matches!(run_task(c, &task, &opts), Err(CatalogError::PrecisionTooLow { given: 3, .. })));
    let r = full_report(c, &[task], &opts).remove(0);
    assert_eq!(r.status, Status::Fail);
    assert!(is_config_error(&r));
    assert_eq!(r.details["error_kind"], "precision_too_low");
}

#[test]
fn theta_times_weight_k_forms_on_gamma1_4() {
    // span of theta * M_k(4,1) has dimension dim M_k(4,1), which is the bound for weight k + 1/2
    let c = cat();
    let p = c.presentation("N4").unwrap();
    let half: modring_catalog::GroupSpec = "gammaH:4:[1]:half".parse().unwrap();
    let prec = 40;
    let mut ge = GenEval::new(c, p, prec).unwrap();
    let ctx = FieldCtx::new(1);
    let theta = modring_catalog::Evaluator::new(c, &ctx).form("theta", prec).unwrap();
    for w in 0..=12 {
        let (mons, _) = ge.monomial_matrix(k(w)).unwrap();
        let rows: Vec<_> = mons
            .iter()
            .map(|e| ge.monomial(e).unwrap().checked_mul(&theta).unwrap().coeffs().to_vec())
            .collect();
        let rank = modring_core::linalg::rank(&rows, prec).unwrap() as i64;
        assert_eq!(rank, c.dim(&p.group, k(w)).unwrap());
        assert_eq!(rank, c.dim(&half, HalfWeight::from_doubled(2 * w + 1)).unwrap());
    }
}

#[test]
fn full_report_passes() {
    let c = cat();
    let reports = full_report(c, &all_tasks(c), &Options::default());
    assert!(reports.len() > 50);
    for r in &reports {
        assert!(r.status != Status::Fail, "{}", r.to_text());
    }
    let skipped: Vec<_> = reports.iter().filter(|r| r.status == Status::Skipped).map(|r| r.case.as_str()).collect();
    assert_eq!(skipped, vec!["N13h3"]);
}
