//! Reduced Gröbner bases, membership, elimination, saturation and unit witnesses.

use pvring::groebner::{eliminate, groebner, groebner_traced, render_trace, saturate, unit_witness, Budget, IdealPresentation};
use pvring::polyring::{PolyRing, Rational, TermOrder};

fn main() {
    let budget = Budget::default();
    let r = PolyRing::over_q(&["x", "y"], TermOrder::Grevlex);
    let i: IdealPresentation<Rational> = IdealPresentation::parse(r.clone(), &["x^2 + y^2", "x*y"]).unwrap();
    let (gb, trace) = groebner_traced(&i, &budget).unwrap();
    for e in &trace {
        println!("{}", render_trace(&r, e));
    }
    println!("basis: {}", gb.render().join(", "));
    for f in ["y^3", "y^2"] {
        println!("{f} in ideal: {}", gb.contains(&r.parse(f).unwrap()));
    }

    let r3 = PolyRing::over_q(&["t", "x", "y"], TermOrder::Grevlex);
    let par: IdealPresentation<Rational> = IdealPresentation::parse(r3.clone(), &["x - t", "y - t^2"]).unwrap();
    println!("implicit equation: {}", eliminate(&par, &[1, 2], &budget).unwrap().render().join(", "));

    let r3 = PolyRing::over_q(&["x", "y", "z"], TermOrder::Grevlex);
    let cross: IdealPresentation<Rational> = IdealPresentation::parse(r3.clone(), &["x*z", "x*y"]).unwrap();
    let x = r3.parse("x").unwrap();
    println!("(xz, xy) : x^∞ = ({})", saturate(&cross, &x, &budget).unwrap().render().join(", "));

    let unit: IdealPresentation<Rational> = IdealPresentation::parse(r.clone(), &["x*y - 1", "x"]).unwrap();
    let labels = vec!["f".to_string(), "g".to_string()];
    let w = unit_witness(&unit, &labels, &budget).unwrap().expect("1 is in the ideal");
    for line in w.render(&r) {
        println!("{line}");
    }
    println!("witness replays to 1: {}", w.proves_unit());
    let lex = groebner(&unit.with_order(TermOrder::Lex), &budget).unwrap();
    println!("lex basis: {}", lex.render().join(", "));
}
