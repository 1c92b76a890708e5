//! The jet ring of σ(Y) = t·Y, δ(Y) = t·Y and how the operators act on it.

use pvring::basefield::BaseField;
use pvring::jetring::{JetOptions, JetRing};
use pvring::linsys::LinearSystem;

fn main() {
    let k = BaseField::builder(&["x", "t"])
        .sigma("s", &[("x", "x + 1")], &[("x", "x - 1")])
        .delta("dx", &[("x", "1")])
        .parameter("t")
        .build()
        .unwrap();
    let sys = LinearSystem::parse(k, 1, &[("s", &[&["t"]])], &[("dx", &[&["t"]])]).unwrap();
    let ring = JetRing::new(sys, JetOptions::default()).unwrap();

    let f = ring.parse("X'[1,1]/det").unwrap();
    println!("f = {}", ring.render(&f));
    for op in ["s", "dx", "partial"] {
        println!("{op}(f) = {}", ring.render(&ring.apply(op, &f).unwrap()));
    }
    println!("∂²(f) = {}", ring.render(&ring.d_apply_n(&f, 2).unwrap()));

    let sd = ring.apply("s", &ring.apply("partial", &f).unwrap()).unwrap();
    let ds = ring.apply("partial", &ring.apply("s", &f).unwrap()).unwrap();
    println!("s∂(f) = ∂s(f): {}", sd.same_value(&ds));
}
