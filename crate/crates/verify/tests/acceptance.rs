//! Acceptance run: one PASS/FAIL line per criterion, with timings against budgets.
//! Exits non-zero if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use modring_catalog::{Catalog, Check};
use modring_core::arith::rat;
use modring_core::characters::{named_character, named_character_names};
use modring_core::constructors::{eis_f, eisenstein_c, eisenstein_e};
use modring_core::hilbert::HilbertSeries;
use modring_core::linalg;
use modring_core::{CycloNum, FieldCtx, HalfWeight, QSeries, RootOfUnity};
use modring_verify::*;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestError, TestRunner};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sigma(k: u32, n: u64) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(|d| (d as i64).pow(k)).sum()
}

fn eisenstein_fixtures() -> Outcome {
    let k1 = FieldCtx::new(1);
    let prec = 50;
    let e4 = eisenstein_e(&k1, 4, prec).map_err(|e| e.to_string())?;
    let e6 = eisenstein_e(&k1, 6, prec).map_err(|e| e.to_string())?;
    let probe = eisenstein_e(&k1, 2, prec).map_err(|e| e.to_string())?.scale_rational(&rat(-1, 24));
    ensure(e4.coeff(0).is_one() && e6.coeff(0).is_one(), || "constant terms".into())?;
    ensure(probe.coeff(0).to_rational() == Some(rat(-1, 24)), || "E2 probe constant".into())?;
    for n in 1..prec as u64 {
        let i = n as usize;
        ensure(e4.coeff(i).to_rational() == Some(rat(240 * sigma(3, n), 1)), || format!("E4 q^{n}"))?;
        ensure(e6.coeff(i).to_rational() == Some(rat(-504 * sigma(5, n), 1)), || format!("E6 q^{n}"))?;
        ensure(probe.coeff(i).to_rational() == Some(rat(sigma(1, n), 1)), || format!("E2 probe q^{n}"))?;
    }
    for p in [2u32, 3, 5, 7] {
        let c = eisenstein_c(&k1, p, prec).map_err(|e| e.to_string())?;
        ensure(c.coeff(1).to_rational() == Some(rat(24, p as i64 - 1)), || format!("C_{p}"))?;
    }
    let root = |ctx: &Arc<FieldCtx>, a: i64, b: u64| CycloNum::from_root(ctx, RootOfUnity::new(a, b)).unwrap();
    let int = |ctx: &Arc<FieldCtx>, n: i64| CycloNum::from_int(ctx, n);
    type Lead = Box<dyn Fn(&Arc<FieldCtx>) -> CycloNum>;
    let leads: Vec<(&str, u32, Lead)> = vec![
        ("rho3", 1, Box::new(move |k| int(k, 6))),
        ("rho4", 1, Box::new(move |k| int(k, 4))),
        ("chi5", 4, Box::new(move |k| int(k, 3) - root(k, 1, 4))),
        ("chi7", 6, Box::new(move |k| int(k, 3) - root(k, 1, 6) - root(k, 1, 6))),
        ("rho7", 1, Box::new(move |k| int(k, 2))),
        ("rho8", 1, Box::new(move |k| int(k, 2))),
        ("chi9", 6, Box::new(move |k| int(k, 2) - root(k, 1, 6))),
        ("chi11", 10, Box::new(move |k| root(k, 3, 10) - root(k, 4, 10) - root(k, 4, 10))),
        ("chi16", 4, Box::new(move |k| int(k, 1) - root(k, 1, 4))),
    ];
    for (name, l, lead) in &leads {
        let ctx = FieldCtx::new(*l);
        let f = eis_f(&ctx, 1, &named_character(name).unwrap(), prec).map_err(|e| e.to_string())?;
        ensure(f.coeff(0).is_one() && f.coeff(1) == &lead(&ctx), || format!("f_{name} leading {}", f.coeff(1)))?;
    }
    Ok(format!("E4, E6, E2 probe, C_2..C_7 and {} f-series at prec {prec}", leads.len()))
}

fn summarize(reports: &[Report]) -> Outcome {
    let bad: Vec<String> = reports.iter().filter(|r| r.status == Status::Fail).map(|r| r.to_text()).collect();
    if bad.is_empty() {
        Ok(format!("{} checks", reports.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn identities(cat: &Catalog) -> Outcome {
    ensure(cat.identities().len() == 12, || format!("{} identities in catalog", cat.identities().len()))?;
    let reports = full_report(cat, &identity_tasks(cat, None).unwrap(), &Options::default());
    summarize(&reports)?;
    let claims: usize = cat.identities().iter().map(|i| i.claims.len()).sum();
    Ok(format!("12 identities, {claims} claims vanish to Sturm precision"))
}

const SPAN_SUITE: &[&str] = &[
    "N1", "N2", "N3", "N5", "N6", "N7", "N8", "N9", "N10", "N11h3", "N12", "N13h3", "N14h9", "N16h9", "N18h7", "N25h6",
    "N4h", "N8h", "N12h", "N16h9h",
];

fn span_suite(cat: &Catalog) -> Outcome {
    for case in SPAN_SUITE {
        let p = cat.presentation(case).map_err(|e| e.to_string())?;
        ensure(p.checks.contains(&Check::Span), || format!("{case} has no span check"))?;
        ensure(p.kmax >= 6, || format!("{case} kmax {}", p.kmax))?;
    }
    let tasks = check_tasks(cat, Check::Span, None).unwrap();
    let reports = full_report(cat, &tasks, &Options::default());
    summarize(&reports)?;
    let weights: usize = reports.iter().map(|r| r.details["weights"].as_array().map_or(0, |a| a.len())).sum();
    Ok(format!("{} cases, {weights} weights, rank = dim throughout", reports.len()))
}

const RELATIONS: &[(&str, &[&str])] = &[
    ("N7", &["O7"]),
    ("N9", &["O9", "O9bar", "O9'"]),
    ("N10", &["O10", "O10bar", "O10'"]),
    ("N11h3", &["O11"]),
    ("N11", &["Orho11", "Ochi11", "Ochi11bar", "Ochi11_3", "Ochi11_3bar", "O11'"]),
    ("N12h", &["O12a", "O12b", "O12c"]),
    ("N14h9", &["O14"]),
    ("N16h9h", &["O16h"]),
    ("N16", &["O16", "O16bar", "O16'"]),
    ("N18h7", &["O18a", "O18b", "O18c"]),
];

fn relation_suite(cat: &Catalog) -> Outcome {
    let mut n = 0;
    for (case, names) in RELATIONS {
        let p = cat.presentation(case).map_err(|e| e.to_string())?;
        for name in *names {
            ensure(p.relations.iter().any(|r| r.name == *name), || format!("{case} lacks {name}"))?;
        }
        n += p.relations.len();
    }
    let reports = full_report(cat, &check_tasks(cat, Check::Relations, None).unwrap(), &Options::default());
    summarize(&reports)?;
    Ok(format!("{n} relations in {} cases vanish", RELATIONS.len()))
}

fn kernel_suite(cat: &Catalog) -> Outcome {
    let mut steps = 0;
    for case in ["N7", "N9", "N11h3", "N14h9", "N18h7"] {
        let p = cat.presentation(case).map_err(|e| e.to_string())?;
        let top = HalfWeight::integral(6);
        let mut ge = GenEval::new(cat, p, p.group.sturm_prec(top) + DEFAULT_GUARD).map_err(|e| e.to_string())?;
        for w in p.weights_up_to(6).into_iter().skip(1) {
            let s = kernel_step(&mut ge, p, w).map_err(|e| e.to_string())?;
            let dim = cat.dim(&p.group, w).map_err(|e| e.to_string())? as usize;
            ensure(s.exhausted() && s.dim_kernel == s.monomials - dim, || format!("{case} weight {w}: {s:?}"))?;
            if case == "N11h3" && w == top {
                ensure(s.dim_kernel == 1 && s.dim_ideal == 1, || format!("N11h3 k=6: {s:?}"))?;
            }
            steps += 1;
        }
    }
    Ok(format!("dim I_k = dim K_k = #monomials - dim M_k at {steps} weights"))
}

fn hilbert_suite(cat: &Catalog) -> Outcome {
    let tasks = check_tasks(cat, Check::Hilbert, None).unwrap();
    let reports = full_report(cat, &tasks, &Options::default());
    summarize(&reports)?;
    let horizon = DEFAULT_HORIZON as usize;
    let one = HalfWeight::integral(1);

    let full = "full".parse().unwrap();
    let level_one = HilbertSeries::free(&[HalfWeight::integral(4), HalfWeight::integral(6)]).expand(horizon);
    for k in 0..=horizon {
        let d = cat.dim(&full, HalfWeight::integral(k as u32)).unwrap_or(0);
        ensure(level_one[k] == d, || format!("free[4,6] at {k}"))?;
    }

    let lemma4 = HilbertSeries::free(&[one, one]).apply_lemma4(HalfWeight::integral(2)).expand(horizon);
    let n14 = "gammaH:14:[9]".parse().unwrap();
    for k in 0..=horizon {
        let want = if k == 0 { 1 } else { 2 * k as i64 };
        ensure(lemma4[k] == want, || format!("(1+t^2)/(1-t)^2 at {k}"))?;
        if k > 0 {
            ensure(cat.dim(&n14, HalfWeight::integral(k as u32)).unwrap() == want, || format!("M_{k}(14,<9>)"))?;
        }
    }

    let ctx = FieldCtx::new(1);
    for n in 1..=5u32 {
        let s = HilbertSeries::lemma5(n).expand(horizon);
        ensure((0..=horizon).all(|k| s[k] == n as i64 * k as i64 + 1), || format!("Lemma 5 series, n = {n}"))?;
        let (w, rels) = lemma5_relations(&ctx, n as usize);
        let q = quotient_dims(&ctx, &w, &rels, 8).map_err(|e| e.to_string())?;
        ensure((0..=4).all(|k| q[2 * k] == n as i64 * k as i64 + 1), || format!("Lemma 5 ideal, n = {n}"))?;
    }

    let mut seq = vec![0i64; 2 * horizon + 1];
    for k in 0..=horizon {
        seq[2 * k] = (k + k / 2 + 1) as i64;
    }
    let fitted = HilbertSeries::fit(&seq, &[one, HalfWeight::integral(2)]).map_err(|e| e.to_string())?;
    ensure(fitted.expand_doubled(2 * horizon) == seq, || "Lemma 6 fitted series".into())?;
    Ok(format!("{} catalog series, free[4,6], (1+t^2)/(1-t)^2, Lemma 5 (n <= 5), Lemma 6 to horizon {horizon}", reports.len()))
}

fn integrality(cat: &Catalog) -> Outcome {
    for name in INTEGRAL_FORMS {
        let r = verify_integrality(cat, name, INTEGRALITY_PREC).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_text())?;
    }
    let control = verify_integrality(cat, "f[1;chi5]", INTEGRALITY_PREC).map_err(|e| e.to_string())?;
    ensure(control.status == Status::Fail, || "f_chi5 control passed".into())?;
    Ok(format!("alpha1, alpha7 in q + q^2 Z[[q]] to prec {INTEGRALITY_PREC}; f_chi5 control fails"))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(0x00ac_ce97),
        failure_persistence: None,
        ..Config::default()
    })
}

fn elem(ctx: &Arc<FieldCtx>, c: &[i64]) -> CycloNum {
    let coords: Vec<_> = c.iter().take(ctx.degree()).map(|&x| rat(x, 1)).collect();
    CycloNum::from_coords(ctx, &coords).unwrap()
}

fn check(cond: bool, what: &str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn run<T: std::fmt::Debug>(name: &str, r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{name}: {e}"))
}

fn properties(cat: &Catalog) -> Outcome {
    let conductors = prop::sample::select(&[1u32, 3, 4, 5, 8, 12][..]);
    let coords = || prop::collection::vec(-20i64..20, 4);
    let series = || prop::collection::vec(-9i64..9, 10);

    run(
        "field axioms",
        runner(64).run(&(conductors.clone(), coords(), coords(), coords()), |(l, a, b, c)| {
            let ctx = FieldCtx::new(l);
            let (x, y, z) = (elem(&ctx, &a), elem(&ctx, &b), elem(&ctx, &c));
            check(&(&x * &y) * &z == &x * &(&y * &z), "associativity")?;
            check(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), "distributivity")?;
            if !x.is_zero() {
                check((&x * &x.inv().unwrap()).is_one(), "inverse")?;
            }
            Ok(())
        }),
    )?;
    run(
        "conj involution",
        runner(64).run(&(conductors.clone(), coords(), coords()), |(l, a, b)| {
            let ctx = FieldCtx::new(l);
            let (x, y) = (elem(&ctx, &a), elem(&ctx, &b));
            check(x.conj().conj() == x, "involution")?;
            check((&x * &y).conj() == &x.conj() * &y.conj(), "multiplicative")
        }),
    )?;
    run(
        "V-operator",
        runner(64).run(&(series(), series(), 1usize..4, 1usize..4), |(a, b, h, g)| {
            let ctx = FieldCtx::new(1);
            let (f, e) = (QSeries::from_integers(&ctx, &a), QSeries::from_integers(&ctx, &b));
            check((&f * &e).v_operator(h) == &f.v_operator(h) * &e.v_operator(h), "homomorphism")?;
            check(f.v_operator(h).v_operator(g) == f.v_operator(h * g), "composition")
        }),
    )?;
    let names = named_character_names();
    run(
        "character multiplicativity",
        runner(64).run(&(0..names.len(), 1i64..400, 1i64..400), |(i, m, n)| {
            let chi = named_character(names[i]).unwrap();
            let ctx = FieldCtx::new(chi.order() as u32);
            if chi.group().is_unit(m) && chi.group().is_unit(n) {
                check(chi.eval(&ctx, m * n).unwrap() == &chi.eval(&ctx, m).unwrap() * &chi.eval(&ctx, n).unwrap(), "mult")?;
            }
            Ok(())
        }),
    )?;
    for name in &names {
        let chi = named_character(name).unwrap();
        let ctx = FieldCtx::new(chi.order() as u32);
        let s = chi.group().units().fold(CycloNum::zero(&ctx), |acc, a| acc + chi.eval(&ctx, a as i64).unwrap());
        ensure(s.is_zero(), || format!("orthogonality of {name}"))?;
    }
    run(
        "rank-nullity",
        runner(48).run(&(prop::collection::vec(prop::collection::vec(-3i64..3, 6), 1..8), 1usize..6), |(rows, ncols)| {
            let ctx = FieldCtx::new(4);
            let m: linalg::Matrix = rows.iter().map(|r| r.iter().take(ncols).map(|&x| elem(&ctx, &[x, x % 2])).collect()).collect();
            let rank = linalg::rank(&m, ncols).unwrap();
            check(rank + linalg::left_nullspace(&ctx, &m, ncols).unwrap().len() == m.len(), "rank + nullity")
        }),
    )?;
    let cases = prop::sample::select(&["N1", "N3", "N5", "N7", "N9", "N11h3", "N4h", "N14h9"][..]);
    run(
        "rank stabilization",
        runner(16).run(&(cases, 0u32..8, 1usize..16), |(case, w, extra)| {
            let p = cat.presentation(case).unwrap();
            let w = HalfWeight::from_doubled(if p.group.half_integral { w } else { 2 * w });
            let s = p.group.sturm_prec(w);
            check(span_rank(cat, p, w, s).unwrap() == span_rank(cat, p, w, s + extra).unwrap(), "stable rank")
        }),
    )?;
    Ok("field, conj, V-operator, characters, rank-nullity, stabilization (fixed seed)".into())
}

fn main() {
    let cat = Catalog::builtin();
    type Criterion<'a> = (&'a str, Duration, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("eisenstein fixtures", Duration::from_secs(1), Box::new(eisenstein_fixtures)),
        ("identity suite", Duration::from_secs(10), Box::new(|| identities(cat))),
        ("span suite", Duration::from_secs(600), Box::new(|| span_suite(cat))),
        ("relation suite", Duration::from_secs(120), Box::new(|| relation_suite(cat))),
        ("kernel exhaustion", Duration::from_secs(300), Box::new(|| kernel_suite(cat))),
        ("hilbert suite", Duration::from_secs(1), Box::new(|| hilbert_suite(cat))),
        ("integrality", Duration::from_secs(1), Box::new(|| integrality(cat))),
        ("property suites", Duration::from_secs(600), Box::new(|| properties(cat))),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let dt = t.elapsed();
        let (ok, msg) = match outcome {
            Ok(m) if dt <= *budget => (true, m),
            Ok(m) => (false, format!("{m}; over budget")),
            Err(m) => (false, m),
        };
        failed += usize::from(!ok);
        println!(
            "{} {}. {name} ({:.2}s, budget {}s): {msg}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            dt.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
