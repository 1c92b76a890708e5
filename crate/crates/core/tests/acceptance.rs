//! Acceptance suite: one pass/fail line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use pvring::cli::{run, ProblemFile};
use pvring::groebner::WitnessRef;
use pvring::jetring::{JetRing, JetVar};
use pvring::linsys::KMatrix;
use pvring::polyring::Field;
use pvring::prolong::{
    build_chain, check_closure, check_consistency, counterexample_two_derivations, evaluation_kernel,
    find_constants, lemma1_certify, JetEvaluation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load(name: &str) -> ProblemFile {
    ProblemFile::parse(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

type Outcome = Result<String, String>;

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail}; {:.2?} (limit {:?})", took, limit))
    } else {
        Err(format!("{detail}; took {:.2?}, limit {:?}", took, limit))
    }
}

fn counterexample() -> Outcome {
    let start = Instant::now();
    let c = counterexample_two_derivations();
    if !c.trivial() {
        return Err("basis of b is not {1}".into());
    }
    let w = &c.witness;
    if !w.proves_unit() {
        return Err("witness does not replay to 1".into());
    }
    let r = &c.ring;
    let results: Vec<String> = w.steps.iter().map(|s| r.render(&s.result)).collect();
    let expected = ["x_1 + v*x_12", "x_12", "x_1", "1"];
    if results != expected {
        return Err(format!("witness steps {results:?}, expected {expected:?}"));
    }
    let refs: Vec<Vec<WitnessRef>> = w.steps.iter().map(|s| s.terms.iter().map(|t| t.1).collect()).collect();
    let labels: Vec<&str> = w.generators.iter().map(|g| g.0.as_str()).collect();
    if refs[0] != [WitnessRef::Generator(4)] || labels[4] != "∂2 g1" || labels[3] != "∂1 g2" {
        return Err("witness does not start from ∂2 g1 and ∂1 g2".into());
    }
    if !c.closure.iter().all(|(_, ok)| *ok) || c.slice_basis.is_trivial() || !c.slice_point_ok() {
        return Err("closure hypotheses or single-derivation slice wrong".into());
    }
    within(start, Duration::from_secs(1), "1 ∈ b with a 4-step replayable witness".into())
}

fn random_evaluation(rng: &mut ChaCha8Rng, ring: &JetRing, n: usize, order: usize) -> Option<JetEvaluation> {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let deg = rng.gen_range(0..=3);
                    let text = (0..=deg)
                        .map(|k| format!("({})*t^{k}", rng.gen_range(-3i64..=3)))
                        .collect::<Vec<_>>()
                        .join(" + ");
                    ring.field().parse(&text).unwrap()
                })
                .collect()
        })
        .collect();
    JetEvaluation::from_matrix(ring, KMatrix::from_rows(rows), order).ok()
}

fn zero_delta_ring(n: usize) -> JetRing {
    let mut p = load("delta_zero.pv");
    let s = p.system.as_mut().unwrap();
    s.n = n;
    s.b[0].rows = (0..n).map(|_| (0..n).map(|_| pvring::cli::Spanned::new("0")).collect()).collect();
    p.seeds.clear();
    p.jet_ring().unwrap()
}

fn lemma2_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rings = [zero_delta_ring(1), zero_delta_ring(2)];
    let mut count = 0;
    while count < 24 {
        let n = 1 + count % 2;
        let d = count % 3;
        let ring = &rings[n - 1];
        let Some(ev) = random_evaluation(&mut rng, ring, n, d + 1) else { continue };
        let a = evaluation_kernel(ring, &ev, d).map_err(|e| e.to_string())?;
        if !check_closure(ring, &a).map_err(|e| e.to_string())?.passed {
            return Err(format!("closure failed for kernel #{count}"));
        }
        let cert = check_consistency(ring, &a).map_err(|e| e.to_string())?;
        if cert.trivial {
            return Err(format!("1 ∈ b for kernel #{count}"));
        }
        if let Some((label, _)) = cert.generators.iter().find(|(_, g)| !ev.eval(ring, g).is_zero()) {
            return Err(format!("evaluation does not annihilate {label} of kernel #{count}"));
        }
        let up = evaluation_kernel(ring, &ev, d + 1).map_err(|e| e.to_string())?;
        if !lemma1_certify(ring, &a, &up).map_err(|e| e.to_string())? {
            return Err(format!("level {} kernel does not certify against level {d}", d + 1));
        }
        count += 1;
    }
    within(start, Duration::from_secs(60), format!("{count} evaluation kernels, n ≤ 2, levels ≤ 2"))
}

fn chains() -> Outcome {
    let mut details = Vec::new();
    for name in ["delta_zero.pv", "shift_t.pv", "mixed.pv"] {
        let start = Instant::now();
        let p = load(name);
        let ring = p.jet_ring().map_err(|e| e.to_string())?;
        let seeds = p.seeds(&ring).map_err(|e| e.to_string())?;
        let report = build_chain(&ring, &seeds, 3).map_err(|e| e.to_string())?;
        if !report.passed() || report.levels.len() != 4 {
            return Err(format!("{name}: {}", report.render_text(&ring)));
        }
        for l in &report.levels[1..] {
            if l.elimination_ok != Some(true) || l.partial_ok != Some(true) {
                return Err(format!("{name}: level {} checks missing", l.level));
            }
        }
        if start.elapsed() > Duration::from_secs(60) {
            return Err(format!("{name} took {:.2?}", start.elapsed()));
        }
        details.push(format!("{name} {:.2?}", start.elapsed()));
    }
    Ok(format!("depth 3 on {}", details.join(", ")))
}

fn integrability() -> Outcome {
    let start = Instant::now();
    let good = load("mixed.pv").linear_system().map_err(|e| e.to_string())?;
    if !good.check_integrability().map_err(|e| e.to_string())?.passed() {
        return Err("mixed fixture fails".into());
    }
    let bad = load("perturbed.pv").linear_system().map_err(|e| e.to_string())?;
    let report = bad.check_integrability().map_err(|e| e.to_string())?;
    let residuals: Vec<String> = report.failures().map(|c| bad.render_matrix(&c.residual)).collect();
    if residuals != ["[[1]]"] {
        return Err(format!("perturbed residuals {residuals:?}"));
    }
    within(start, Duration::from_secs(1), "mixed passes, perturbed fails with residual [[1]]".into())
}

fn random_element(rng: &mut ChaCha8Rng, n: usize) -> String {
    let coeffs = ["1", "-2", "x", "t", "1/t", "(x + 1)/t", "x*t - 3", "1/(x + t)"];
    let terms: Vec<String> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut t = vec![format!("({})", coeffs[rng.gen_range(0..coeffs.len())])];
            for _ in 0..rng.gen_range(0..=2) {
                let v = JetVar::new(rng.gen_range(0..=2), rng.gen_range(0..n), rng.gen_range(0..n));
                t.push(v.to_string());
            }
            t.join("*")
        })
        .collect();
    match rng.gen_range(0..=2) {
        0 => terms.join(" + "),
        e => format!("({})/det^{e}", terms.join(" + ")),
    }
}

fn jet_commutation() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut pairs = 0;
    for name in ["delta_zero.pv", "shift_t.pv", "mixed.pv"] {
        let ring = load(name).jet_ring().map_err(|e| e.to_string())?;
        let ids: Vec<String> = ring.field().operators().map(|o| o.id().to_string()).collect();
        for _ in 0..50 {
            let text = random_element(&mut rng, ring.n());
            let f = ring.parse(&text).map_err(|e| format!("{text}: {e}"))?;
            for (i, a) in ids.iter().enumerate() {
                for b in &ids[i + 1..] {
                    let ab = ring.apply(a, &ring.apply(b, &f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                    let ba = ring.apply(b, &ring.apply(a, &f).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                    if !ab.same_value(&ba) {
                        return Err(format!("{name}: {a} and {b} do not commute on {text}"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(30), format!("{pairs} operator pairs on 150 random elements"))
}

fn groebner_oracle() -> Outcome {
    let start = Instant::now();
    let cases = common::oracle_cases();
    if cases.len() < 10 {
        return Err(format!("only {} oracle cases", cases.len()));
    }
    for c in &cases {
        let got = common::run_case(c);
        if got != c.expect {
            return Err(format!("case {}: got {got:?}, expected {:?}", c.name, c.expect));
        }
    }
    within(start, Duration::from_secs(10), format!("{} cases byte-exact", cases.len()))
}

fn constants_guard() -> Outcome {
    let start = Instant::now();
    let p = load("delta_zero.pv");
    let ring = p.jet_ring().map_err(|e| e.to_string())?;
    let seeds = p.seeds(&ring).map_err(|e| e.to_string())?;
    let report = build_chain(&ring, &seeds, 3).map_err(|e| e.to_string())?;
    let c = find_constants(&ring, &report.levels[3].ideal, 3, &[]).map_err(|e| e.to_string())?;
    if let Some(new) = c.new_constants().next() {
        return Err(format!("constant outside K: {}", ring.render_poly(new)));
    }
    within(start, Duration::from_secs(30), format!("{} constants, all in K", c.constants.len()))
}

fn determinism() -> Outcome {
    let f = |n: &str| fixture(n).display().to_string();
    let mut commands: Vec<Vec<String>> = vec![vec!["counterexample".into()]];
    for name in ["delta_zero.pv", "shift_t.pv", "mixed.pv", "perturbed.pv"] {
        commands.push(vec!["check".into(), f(name)]);
        commands.push(vec!["chain".into(), f(name), "--depth".into(), "3".into()]);
        commands.push(vec!["prolong".into(), f(name), "--level".into(), "1".into()]);
    }
    commands.push(vec!["constants".into(), f("delta_zero.pv"), "--level".into(), "3".into()]);
    let k = f("kernel.pv");
    for ideal in ["sos", "parabola", "twisted_cubic", "cross", "textbook"] {
        commands.push(vec!["groebner".into(), k.clone(), "--ideal".into(), ideal.into(), "--trace".into()]);
        commands.push(vec!["member".into(), k.clone(), "--ideal".into(), ideal.into(), "--poly".into(), "x*y".into()]);
        commands.push(vec!["eliminate".into(), k.clone(), "--ideal".into(), ideal.into(), "--keep".into(), "x,y".into()]);
        commands.push(vec!["saturate".into(), k.clone(), "--ideal".into(), ideal.into(), "--by".into(), "x".into()]);
    }
    let mut runs = 0;
    for cmd in &commands {
        for machine in [false, true] {
            let mut args = vec!["pvring".to_string()];
            if machine {
                args.push("--machine".into());
            }
            args.extend(cmd.iter().cloned());
            let first = run(&args);
            let second = run(&args);
            if first != second {
                return Err(format!("output differs for {}", args.join(" ")));
            }
            runs += 2;
        }
    }
    Ok(format!("{runs} runs over {} commands, identical output", commands.len() * 2))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("counterexample reproduction", counterexample),
        ("consistency of evaluation kernels", lemma2_suite),
        ("chain invariants on bundled fixtures", chains),
        ("integrability classifier", integrability),
        ("jet operator commutation", jet_commutation),
        ("Gröbner kernel against oracle", groebner_oracle),
        ("no new constants for δ(y) = 0", constants_guard),
        ("deterministic output", determinism),
    ];
    let mut failed = 0;
    let mut results = BTreeMap::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = f();
        match &outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail}", k + 1);
            }
        }
        results.insert(k + 1, outcome.is_ok());
    }
    println!("acceptance: {} of {} criteria passed", results.values().filter(|v| **v).count(), results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
