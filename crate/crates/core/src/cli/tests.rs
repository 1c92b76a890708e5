use super::*;
use crate::expr::Pos;
use crate::linsys::LinearSystem;
use proptest::prelude::*;

const MINIMAL: &str = "[field]\nvars = t\nparam = t\n\n[sigma s]\n\n[system]\nn = 1\nA s = [[t]]\n";

fn err(text: &str) -> ProblemError {
    ProblemFile::parse(text).unwrap_err()
}

#[test]
fn minimal_file_passes_check() {
    let p = ProblemFile::parse(MINIMAL).unwrap();
    let sys = p.linear_system().unwrap();
    assert!(sys.check_integrability().unwrap().passed());
    assert!(sys.field().check_commutation().unwrap().passed());
}

#[test]
fn singular_matrix_is_rejected() {
    let p = ProblemFile::parse(&MINIMAL.replace("[[t]]", "[[0]]")).unwrap();
    let e = p.linear_system().unwrap_err();
    assert!(e.message.contains("A must be invertible"), "{e}");
    assert_eq!(e.line, 7);
}

#[test]
fn shift_fixture_matches_hand_written_system() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/shift_t.pv")).unwrap();
    let p = ProblemFile::parse(&text).unwrap();
    let field = crate::basefield::BaseField::builder(&["x", "t"])
        .sigma("s", &[("x", "x + 1")], &[("x", "x - 1")])
        .parameter("t")
        .build()
        .unwrap();
    let hand = LinearSystem::parse(field, 1, &[("s", &[&["t"]])], &[]).unwrap();
    assert_eq!(p.linear_system().unwrap(), hand);
    let ring = p.jet_ring().unwrap();
    let seeds = p.seeds(&ring).unwrap();
    assert_eq!(ring.render_poly(&seeds[&1][0]), "-(x/t)*X[1,1] + X'[1,1]");
}

#[test]
fn diagnostics_carry_positions() {
    let p = ProblemFile::parse("[field]\nvars = x, t\nparam = t\n[delta d]\nx = (1 + \n").unwrap();
    let e = p.base_field().unwrap_err();
    assert_eq!(e.line, 5);
    assert!(e.column >= 5, "{e}");

    let e = err("[field]\nvars = x\ncolour = red\n");
    assert_eq!((e.line, e.column), (3, 1));
    assert!(e.message.contains("unknown key 'colour'"));
    let e = err("[fields]\n");
    assert!(e.message.contains("unknown section"));
    let e = err("x = 1\n");
    assert_eq!(e.line, 1);
    let e = err("[field]\nvars = x, x\n");
    assert_eq!((e.line, e.column), (2, 11));
    let e = err("[field]\nvars = x\nparam = x\n[sigma s]\n[delta s]\n");
    assert!(e.message.contains("duplicate operator id 's'"));
    let e = ProblemFile::parse("[field]\nvars = t\nparam = t\n[sigma s]\n[system]\nn = 1\nA s = [[t], [1]]\n")
        .unwrap()
        .linear_system()
        .unwrap_err();
    assert_eq!(e.line, 7);
    let e = err("[field]\nvars = t\nparam = t\n[sigma s]\n[system]\nn = 1\nA s = [[t]\n");
    assert_eq!((e.line, e.column), (7, 11));
    let e = ProblemFile::parse("[field]\nvars = t\nparam = t\n[sigma s]\n[system]\nn = 2\nA s = [[t]]\n")
        .unwrap()
        .linear_system()
        .unwrap_err();
    assert!(e.message.contains("2x2"), "{e}");
}

#[test]
fn missing_inverse_is_explained() {
    let p = ProblemFile::parse("[field]\nvars = x, t\nparam = t\n[sigma s]\nx = x + 1\n").unwrap();
    let e = p.base_field().unwrap_err();
    assert_eq!(e.line, 4);
    assert!(e.message.contains("no inverse image for 'x'"), "{e}");
    let p = ProblemFile::parse("[field]\nvars = x, t\nparam = t\n[sigma s]\nx = x + 1\ninverse x = x + 1\n").unwrap();
    let e = p.base_field().unwrap_err();
    assert!(e.message.contains("inverse"), "{e}");
}

#[test]
fn ideal_sections() {
    let p = ProblemFile::parse("[ideal i]\nvars = x, y\norder = lex\nx^2 + y^2\nx*y\n").unwrap();
    let i = p.ideal("i").unwrap();
    assert_eq!(i.render(), ["x^2 + y^2", "x*y"]);
    assert!(p.ideal("j").is_err());
    let e = ProblemFile::parse("[ideal i]\nvars = x, y\nx^^2\n").unwrap().ideal("i").unwrap_err();
    assert_eq!(e.line, 3);
    assert!(err("[ideal i]\nvars = x\norder = deglex\n").message.contains("unknown term order"));
}

#[test]
fn seeds_are_level_checked() {
    let p = ProblemFile::parse(&format!("{MINIMAL}\n[seed 0]\nX'[1,1]\n")).unwrap();
    let ring = p.jet_ring().unwrap();
    let e = p.seeds(&ring).unwrap_err();
    assert_eq!(e.line, 12);
    let p = ProblemFile::parse(&format!("{MINIMAL}\n[seed 9]\nX[1,1]\n")).unwrap();
    assert!(p.seeds(&p.jet_ring().unwrap()).is_err());
}

#[test]
fn options_feed_budgets() {
    let p = ProblemFile::parse("[options]\nmax_reductions = 5\ndmax = 3\norder = lex\n").unwrap();
    assert_eq!(p.options.budget().max_reductions, 5);
    assert_eq!(p.jet_options().dmax, 3);
    assert!(err("[options]\nmax_reductions = -1\n").message.contains("non-negative"));
}

#[test]
fn exit_codes() {
    let o = run(["pvring", "counterexample"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("trivial: yes"));
    assert!(o.stdout.trim_end().ends_with("1 ∈ b"));
    assert_eq!(run(["pvring", "check", "/nonexistent.pv"]).code, 2);
    assert_eq!(run(["pvring", "frobnicate"]).code, 2);
    assert_eq!(run(["pvring", "--help"]).code, 0);
}

#[test]
fn help_lists_defaults() {
    let o = run(["pvring", "--help"]);
    for d in ["100000", "40", "6"] {
        assert!(o.stdout.contains(d), "{}", o.stdout);
    }
    let o = run(["pvring", "constants", "--help"]);
    assert!(o.stdout.contains("[default: 3]"));
}

fn ident() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "t", "u"]).prop_map(String::from)
}

fn expr() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x + 1", "x - 1", "t^2", "1/t", "(x + t)/(x - t)", "0", "3*x*t"]).prop_map(String::from)
}

prop_compose! {
    fn arb_problem()(
        has_field in any::<bool>(),
        sig_images in prop::collection::vec((ident(), expr()), 0..3),
        n in 1usize..3,
        entries in prop::collection::vec(expr(), 4),
        seeds in prop::collection::btree_map(0usize..3, prop::collection::vec(prop::sample::select(vec!["X[1,1] - 1", "X'[1,1]", "t*X[1,1]^2"]), 1..3), 0..3),
        ideal_gens in prop::collection::vec(prop::sample::select(vec!["a^2 + b", "a*b - 1", "b^3"]), 0..3),
        max_red in prop::option::of(1u64..1000),
        order in prop::option::of(prop::sample::select(vec!["lex", "grevlex"])),
    ) -> ProblemFile {
        let mut p = ProblemFile::default();
        let mut dedup = Vec::new();
        for (v, e) in sig_images {
            if !dedup.iter().any(|(w, _): &(String, Spanned)| *w == v) {
                dedup.push((v, Spanned::new(e)));
            }
        }
        if has_field {
            p.field = Some(FieldSection {
                vars: vec!["x".into(), "t".into()],
                param: Some(Spanned::new("t")),
                pos: Pos::default(),
            });
            p.sigmas.push(OperatorSection { id: "s".into(), images: dedup.clone(), inverse: dedup, pos: Pos::default() });
            let rows = (0..n).map(|i| (0..n).map(|j| Spanned::new(entries[i * 2 + j].clone())).collect()).collect();
            p.system = Some(SystemSection {
                n,
                a: vec![MatrixEntry { id: "s".into(), rows, pos: Pos::default() }],
                b: vec![],
                pos: Pos::default(),
            });
            for (d, gens) in seeds {
                p.seeds.insert(d, gens.into_iter().map(Spanned::new).collect());
                p.seed_pos.insert(d, Pos::default());
            }
        }
        p.ideals.push(IdealSection {
            name: "i".into(),
            vars: vec!["a".into(), "b".into()],
            order: order.map(String::from),
            generators: ideal_gens.into_iter().map(Spanned::new).collect(),
            pos: Pos::default(),
        });
        p.options.max_reductions = max_red;
        p
    }
}

proptest! {
    #[test]
    fn print_parse_round_trip(p in arb_problem()) {
        let text = p.print();
        let q = ProblemFile::parse(&text).unwrap();
        prop_assert_eq!(&q.print(), &text);
        prop_assert_eq!(q.field.map(|f| (f.vars, f.param)), p.field.map(|f| (f.vars, f.param)));
        prop_assert_eq!(q.sigmas.iter().map(|s| (&s.id, &s.images, &s.inverse)).collect::<Vec<_>>(),
            p.sigmas.iter().map(|s| (&s.id, &s.images, &s.inverse)).collect::<Vec<_>>());
        prop_assert_eq!(&q.seeds, &p.seeds);
        prop_assert_eq!(&q.options, &p.options);
        prop_assert_eq!(q.ideals.len(), 1);
        prop_assert_eq!(&q.ideals[0].generators, &p.ideals[0].generators);
    }
}
