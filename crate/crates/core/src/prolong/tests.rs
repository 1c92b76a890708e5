use super::*;
use crate::basefield::BaseField;
use crate::jetring::JetOptions;
use crate::linsys::LinearSystem;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn delta_field() -> BaseField {
    BaseField::builder(&["x", "t"])
        .delta("dx", &[("x", "1")])
        .parameter("t")
        .build()
        .unwrap()
}

fn shift_field() -> BaseField {
    BaseField::builder(&["x", "t"])
        .sigma("s", &[("x", "x + 1")], &[("x", "x - 1")])
        .parameter("t")
        .build()
        .unwrap()
}

fn mixed_field() -> BaseField {
    BaseField::builder(&["x", "t"])
        .sigma("s", &[("x", "x + 1")], &[("x", "x - 1")])
        .delta("dx", &[("x", "1")])
        .parameter("t")
        .build()
        .unwrap()
}

/// δ(Y) = 0 for an n×n matrix.
fn delta_zero(n: usize) -> JetRing {
    let zero = vec!["0"; n];
    let rows: Vec<&[&str]> = (0..n).map(|_| zero.as_slice()).collect();
    let sys = LinearSystem::parse(delta_field(), n, &[], &[("dx", &rows)]).unwrap();
    JetRing::new(sys, JetOptions::default()).unwrap()
}

fn shift(a: &str) -> JetRing {
    let sys = LinearSystem::parse(shift_field(), 1, &[("s", &[&[a]])], &[]).unwrap();
    JetRing::new(sys, JetOptions::default()).unwrap()
}

fn mixed() -> JetRing {
    let sys = LinearSystem::parse(mixed_field(), 1, &[("s", &[&["t"]])], &[("dx", &[&["t"]])]).unwrap();
    JetRing::new(sys, JetOptions::default()).unwrap()
}

fn polys(r: &JetRing, gens: &[&str]) -> Vec<JetPoly> {
    gens.iter().map(|g| r.parse(g).unwrap().poly().clone()).collect()
}

fn ideal(r: &JetRing, level: usize, gens: &[&str]) -> JetIdeal {
    r.ideal_from_polys(level, polys(r, gens)).unwrap()
}

fn rendered(r: &JetRing, i: &JetIdeal) -> Vec<String> {
    i.generators().iter().map(|g| r.render_poly(g)).collect()
}

#[test]
fn prolongation_examples() {
    let r = delta_zero(1);
    let (b, labels) = prolongation_ideal(&r, &ideal(&r, 1, &["X[1,1] - 1", "X'[1,1]"])).unwrap();
    let gb = r.plain_groebner(2, b.generators().to_vec()).unwrap();
    assert_eq!(gb.render(), ["X^(2)[1,1]", "X'[1,1]", "X[1,1] - 1"]);
    assert_eq!(labels.len(), b.generators().len());

    let (b, _) = prolongation_ideal(&r, &ideal(&r, 1, &["X'[1,1] - t*X[1,1]"])).unwrap();
    let gb = r.plain_groebner(2, b.generators().to_vec()).unwrap();
    assert!(gb.contains(&r.parse("X^(2)[1,1] - t*X'[1,1] - X[1,1]").unwrap().poly().clone()));
    assert!(gb.contains(&r.parse("X'[1,1] - t*X[1,1]").unwrap().poly().clone()));

    let (b, _) = prolongation_ideal(&r, &r.zero_ideal(1).unwrap()).unwrap();
    assert!(b.generators().is_empty());
}

#[test]
fn closure_examples() {
    let r = delta_zero(1);
    let c = check_closure(&r, &ideal(&r, 1, &["X[1,1] - 1", "X'[1,1]"])).unwrap();
    assert!(c.passed);
    assert_eq!(c.lower.len(), 1);
    assert!(check_closure(&r, &ideal(&r, 1, &["X'[1,1] - X[1,1]"])).unwrap().passed);
    let c = check_closure(&r, &ideal(&r, 1, &["X[1,1] - t", "X'[1,1]"])).unwrap();
    assert!(!c.passed);
    assert_eq!(r.render_poly(&c.failures[0]), "X'[1,1] - 1");
}

#[test]
fn consistency_examples() {
    let r = delta_zero(1);
    let cert = check_consistency(&r, &ideal(&r, 1, &["X[1,1] - 1", "X'[1,1]"])).unwrap();
    assert!(!cert.trivial && cert.hypothesis_ok && cert.witness.is_none());
    assert!(cert.render_text(&r).ends_with("1 ∉ b"));

    // (X − t, ∂X) violates the hypothesis, and its prolongation contains ∂X − 1 and ∂X.
    let cert = check_consistency(&r, &ideal(&r, 1, &["X[1,1] - t", "X'[1,1]"])).unwrap();
    assert!(!cert.hypothesis_ok);
    assert!(cert.trivial);
    let (_, w) = cert.witness.as_ref().unwrap();
    assert!(w.proves_unit());
    assert!(cert.basis_of_b.is_trivial());
}

#[test]
fn counterexample_reproduces_unit() {
    let c = counterexample_two_derivations();
    assert!(c.trivial());
    assert!(c.witness.proves_unit());
    assert_eq!(c.witness.steps.len(), 4);
    assert!(c.closure.iter().all(|(_, ok)| *ok));
    assert_eq!(c.slice_basis.render(), ["x_12", "x_11", "x_2", "x_1 + 1/v"]);
    assert!(!c.slice_basis.is_trivial());
    assert!(c.slice_point_ok());
    let text = c.render_text();
    assert!(text.contains("trivial: yes"));
    assert!(text.ends_with("1 ∈ b"));
    assert!(text.contains("step 3: x_1 = [step 1] + (-v)*[step 2]"));
}

#[test]
fn evaluation_kernel_examples() {
    let r = delta_zero(1);
    let z = |s: &str| KMatrix::from_rows(vec![vec![r.field().parse(s).unwrap()]]);
    let ev = JetEvaluation::from_matrix(&r, z("t^2"), 2).unwrap();
    let k = evaluation_kernel(&r, &ev, 1).unwrap();
    assert_eq!(rendered(&r, &k), ["X'[1,1] - 2*t", "X[1,1] - t^2"]);
    let ev = JetEvaluation::from_matrix(&r, z("1"), 3).unwrap();
    let k = evaluation_kernel(&r, &ev, 3).unwrap();
    assert_eq!(rendered(&r, &k), ["X^(3)[1,1]", "X^(2)[1,1]", "X'[1,1]", "X[1,1] - 1"]);
    assert_eq!(JetEvaluation::from_matrix(&r, z("0"), 1), Err(ProlongError::SingularPoint));
    let bad = JetEvaluation::new(&r, vec![z("t"), z("t")]);
    assert!(matches!(bad, Err(ProlongError::InconsistentEvaluation { .. })));
    assert!(evaluation_kernel(&r, &ev, 4).is_err());
}

#[test]
fn lemma1_examples() {
    let r = delta_zero(1);
    let z = KMatrix::from_rows(vec![vec![r.field().parse("t^2").unwrap()]]);
    let ev = JetEvaluation::from_matrix(&r, z, 2).unwrap();
    let q = evaluation_kernel(&r, &ev, 1).unwrap();
    let q2 = evaluation_kernel(&r, &ev, 2).unwrap();
    assert!(lemma1_certify(&r, &q, &q2).unwrap());
    assert!(!lemma1_certify(&r, &q, &ideal(&r, 2, &["1"])).unwrap());
    assert!(lemma1_certify(&r, &r.zero_ideal(1).unwrap(), &r.zero_ideal(2).unwrap()).unwrap());
    // Right level-0 part, but ∂(X − t²) = ∂X − 2t is not in q'.
    let q_bad = ideal(&r, 2, &["X[1,1] - t^2", "X'[1,1]", "X^(2)[1,1]"]);
    assert!(!lemma1_certify(&r, &q, &q_bad).unwrap());
}

#[test]
fn closure_of_inconsistent_seed_is_unit() {
    let r = shift("t");
    let (c, _) = sigma_delta_close(&r, 1, polys(&r, &["X'[1,1]"])).unwrap();
    assert!(c.is_unit());
}

#[test]
fn closure_fixpoints() {
    let r = shift("1");
    let (c, rounds) = sigma_delta_close(&r, 1, polys(&r, &["X[1,1] - 1", "X'[1,1]"])).unwrap();
    assert_eq!(rounds, 1);
    assert_eq!(rendered(&r, &c), ["X'[1,1]", "X[1,1] - 1"]);

    // σ(∂X − (x/t)X) = t·(∂X − (x/t)X) for A = (t).
    let r = shift("t");
    let g = polys(&r, &["X'[1,1] - x/t*X[1,1]"]);
    let s = r.sigma_apply("s", &FilteredElement::from_poly(g[0].clone(), 1)).unwrap();
    assert_eq!(s.poly(), &g[0].scale(&r.field().parse("t").unwrap()));
    let (c, rounds) = sigma_delta_close(&r, 1, g).unwrap();
    assert_eq!(rounds, 1);
    assert_eq!(rendered(&r, &c), ["X[1,1] - (t/x)*X'[1,1]"]);
}

fn chain_ok(report: &ChainReport, ring: &JetRing) {
    assert!(report.passed(), "{}", report.render_text(ring));
    for l in &report.levels[1..] {
        assert_eq!(l.elimination_ok, Some(true));
        assert_eq!(l.partial_ok, Some(true));
    }
}

#[test]
fn chain_for_constant_solution() {
    let r = delta_zero(1);
    let seeds = BTreeMap::from([(0, polys(&r, &["X[1,1] - 1"]))]);
    let report = build_chain(&r, &seeds, 3).unwrap();
    chain_ok(&report, &r);
    assert_eq!(
        rendered(&r, &report.levels[3].ideal),
        ["X^(3)[1,1]", "X^(2)[1,1]", "X'[1,1]", "X[1,1] - 1"]
    );
    assert!(report.levels.iter().all(|l| l.maximality == Maximality::Certified));
    let text = report.render_text(&r);
    assert!(text.ends_with("result: all checks passed"));
    assert!(report.render_machine(&r).ends_with("status=pass"));
}

#[test]
fn chain_without_seed_is_zero() {
    let r = delta_zero(1);
    let report = build_chain(&r, &BTreeMap::new(), 2).unwrap();
    chain_ok(&report, &r);
    assert!(report.levels.iter().all(|l| l.ideal.is_zero()));
    assert!(report.levels.iter().all(|l| l.maximality == Maximality::NotAttempted));
}

#[test]
fn chain_for_shift_and_mixed_fixtures() {
    let r = shift("t");
    let seeds = BTreeMap::from([(1, polys(&r, &["X'[1,1] - x/t*X[1,1]"]))]);
    let report = build_chain(&r, &seeds, 3).unwrap();
    chain_ok(&report, &r);
    assert_eq!(report.levels[3].ideal.generators().len(), 3);
    let r = mixed();
    chain_ok(&build_chain(&r, &BTreeMap::new(), 3).unwrap(), &r);
}

#[test]
fn chain_failures() {
    let r = delta_zero(1);
    let seeds = BTreeMap::from([(0, polys(&r, &["X[1,1]"]))]);
    let report = build_chain(&r, &seeds, 2).unwrap();
    let f = report.failure.as_ref().unwrap();
    assert_eq!((f.level, f.kind), (0, chain::FailureKind::InconsistentSeed));
    assert!(!report.passed());

    let seeds = BTreeMap::from([(1, polys(&r, &["X[1,1] - 1"]))]);
    let report = build_chain(&r, &seeds, 2).unwrap();
    let f = report.failure.as_ref().unwrap();
    assert_eq!((f.level, f.kind), (1, chain::FailureKind::SeedConflict));
    assert_eq!(f.witness, ["X[1,1] - 1"]);
    assert!(report.render_machine(&r).contains("failure.kind=seed_conflict"));
}

#[test]
fn constants_of_constant_solution() {
    let r = delta_zero(1);
    let seeds = BTreeMap::from([(0, polys(&r, &["X[1,1] - 1"]))]);
    let report = build_chain(&r, &seeds, 3).unwrap();
    let c = find_constants(&r, &report.levels[3].ideal, 3, &[]).unwrap();
    let found: Vec<String> = c.constants.iter().map(|(p, _)| r.render_poly(p)).collect();
    assert_eq!(found.len(), 4);
    assert_eq!(c.new_constants().count(), 0);
    for k in 0..4 {
        let tk = r.field().parse(&format!("t^{k}")).unwrap();
        assert!(c.constants.iter().any(|(p, _)| p.as_constant().is_some_and(|v| v == tk)), "{found:?}");
    }
}

#[test]
fn constants_beyond_the_base_field() {
    // σ(Y) = Y with Y² = t: the class of X is a new constant.
    let r = shift("1");
    let m = ideal(&r, 0, &["X[1,1]^2 - t"]);
    let c = find_constants(&r, &m, 1, &[]).unwrap();
    let new: Vec<String> = c.new_constants().map(|p| r.render_poly(p)).collect();
    assert_eq!(new.len(), 2, "{}", c.render_text(&r));
    assert!(new.iter().all(|s| s.contains("X[1,1]")));
}

#[test]
fn constants_errors() {
    let r = delta_zero(1);
    assert_eq!(find_constants(&r, &ideal(&r, 0, &["1"]), 1, &[]), Err(ProlongError::NotProper));
    let err = find_constants(&r, &ideal(&r, 0, &["X[1,1] - x"]), 1, &[]).unwrap_err();
    assert!(matches!(err, ProlongError::NotStable { .. }), "{err}");
    assert_eq!(find_constants(&r, &r.zero_ideal(0).unwrap(), 1, &[]), Err(ProlongError::InfiniteQuotient));
}

fn arb_entry() -> impl Strategy<Value = String> {
    prop::collection::vec(-3i64..4, 1..5).prop_map(|cs| {
        cs.iter()
            .enumerate()
            .map(|(k, c)| format!("({c})*t^{k}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn arb_point() -> impl Strategy<Value = (usize, Vec<String>, usize)> {
    (1usize..=2)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(arb_entry(), n * n), 0usize..=2))
}

fn evaluation(r: &JetRing, n: usize, entries: &[String], order: usize) -> Option<JetEvaluation> {
    let rows = (0..n)
        .map(|i| (0..n).map(|j| r.field().parse(&entries[i * n + j]).unwrap()).collect())
        .collect();
    JetEvaluation::from_matrix(r, KMatrix::from_rows(rows), order).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn evaluation_kernels_are_consistent((n, entries, d) in arb_point()) {
        let r = delta_zero(n);
        let Some(ev) = evaluation(&r, n, &entries, d + 1) else { return Ok(()) };
        let a = evaluation_kernel(&r, &ev, d).unwrap();
        prop_assert!(check_closure(&r, &a).unwrap().passed);
        let cert = check_consistency(&r, &a).unwrap();
        prop_assert!(!cert.trivial);
        for (_, g) in &cert.generators {
            prop_assert!(ev.eval(&r, g).is_zero());
        }
        let a_up = evaluation_kernel(&r, &ev, d + 1).unwrap();
        prop_assert!(lemma1_certify(&r, &a, &a_up).unwrap());
    }

    #[test]
    fn sigma_delta_closure_is_a_closure_operator(
        s in prop::collection::vec(0usize..6, 0..3),
        t in prop::collection::vec(0usize..6, 0..3),
    ) {
        let pool = [
            "X'[1,1] - x/t*X[1,1]",
            "X[1,1]^2 - t",
            "X[1,1]^2 - x",
            "X'[1,1]^2 - t",
            "X[1,1] - 1",
            "t*X'[1,1]*X[1,1] - x",
        ];
        let r = mixed();
        let pick = |ix: &[usize]| polys(&r, &ix.iter().map(|&i| pool[i]).collect::<Vec<_>>());
        let (cs, _) = sigma_delta_close(&r, 1, pick(&s)).unwrap();
        for g in pick(&s) {
            prop_assert!(cs.contains_poly(&g));
        }
        let (again, _) = sigma_delta_close(&r, 1, cs.generators().to_vec()).unwrap();
        prop_assert_eq!(&again, &cs);
        let mut both = s.clone();
        both.extend(&t);
        let (cst, _) = sigma_delta_close(&r, 1, pick(&both)).unwrap();
        for g in cs.generators() {
            prop_assert!(cst.contains_poly(g));
        }
        prop_assert!(stability_violation(&r, &cs).unwrap().is_none());
    }
}
