//! Bounded search for ΣΔ-constants of a finite quotient.

use std::collections::BTreeMap;

use pvring::basefield::BaseField;
use pvring::jetring::{JetOptions, JetRing};
use pvring::linsys::LinearSystem;
use pvring::prolong::{build_chain, find_constants};

fn main() {
    let k = BaseField::builder(&["x", "t"])
        .delta("dx", &[("x", "1")])
        .parameter("t")
        .build()
        .unwrap();
    let sys = LinearSystem::parse(k, 1, &[], &[("dx", &[&["0"]])]).unwrap();
    let ring = JetRing::new(sys, JetOptions::default()).unwrap();
    let seed = ring.parse("X[1,1] - 1").unwrap().poly().clone();
    let chain = build_chain(&ring, &BTreeMap::from([(0, vec![seed])]), 3).unwrap();
    let report = find_constants(&ring, &chain.levels[3].ideal, 3, &[]).unwrap();
    println!("δ(Y) = 0, Y = 1:\n{}", report.render_text(&ring));

    // σ(Y) = Y with Y² = t: the class of X is fixed by σ but not in K.
    let k = BaseField::builder(&["x", "t"])
        .sigma("s", &[("x", "x + 1")], &[("x", "x - 1")])
        .parameter("t")
        .build()
        .unwrap();
    let sys = LinearSystem::parse(k, 1, &[("s", &[&["1"]])], &[]).unwrap();
    let ring = JetRing::new(sys, JetOptions::default()).unwrap();
    let m = ring.ideal(0, &[ring.parse("X[1,1]^2 - t").unwrap()]).unwrap();
    let report = find_constants(&ring, &m, 1, &[]).unwrap();
    println!("\nσ(Y) = Y, Y² = t:\n{}", report.render_text(&ring));
}
