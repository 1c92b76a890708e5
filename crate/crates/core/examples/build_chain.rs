//! A chain of ΣΔ-ideals for σ(Y) = t·Y seeded with the ∂-relation of t^x.

use std::collections::BTreeMap;

use pvring::basefield::BaseField;
use pvring::jetring::{JetOptions, JetRing};
use pvring::linsys::LinearSystem;
use pvring::prolong::build_chain;

fn main() {
    let k = BaseField::builder(&["x", "t"])
        .sigma("s", &[("x", "x + 1")], &[("x", "x - 1")])
        .parameter("t")
        .build()
        .unwrap();
    let sys = LinearSystem::parse(k, 1, &[("s", &[&["t"]])], &[]).unwrap();
    let ring = JetRing::new(sys, JetOptions::default()).unwrap();
    let seed = ring.parse("X'[1,1] - x/t*X[1,1]").unwrap().poly().clone();
    let report = build_chain(&ring, &BTreeMap::from([(1, vec![seed])]), 3).unwrap();
    println!("{}", report.render_text(&ring));

    // Asking for ∂X at level 1 forces X into the ideal via σ(∂X) = X + t·∂X.
    let bad = ring.parse("X'[1,1]").unwrap().poly().clone();
    let report = build_chain(&ring, &BTreeMap::from([(1, vec![bad])]), 2).unwrap();
    println!("\n{}", report.render_text(&ring));
}
