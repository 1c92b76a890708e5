//! Canonical rational functions and operators on Q(x, t).

use pvring::basefield::BaseField;
use pvring::polyring::Field;

fn main() {
    let k = BaseField::builder(&["x", "t"])
        .sigma("s", &[("x", "x + 1")], &[("x", "x - 1")])
        .delta("dx", &[("x", "1")])
        .parameter("t")
        .build()
        .expect("valid field");

    let f = k.parse("(x^2 - 1)/(x*t + t)").unwrap();
    println!("f = {}", k.render(&f));
    println!("s(f) = {}", k.render(&k.sigma("s").unwrap().apply(&f).unwrap()));
    println!("dx(f) = {}", k.render(&k.delta("dx").unwrap().apply(&f).unwrap()));
    println!("∂(f) = {}", k.render(&k.partial().apply(&f).unwrap()));

    let g = k.parse("1/t").unwrap();
    println!("f + 1/t = {}", k.render(&f.add(&g)));

    let report = k.check_commutation().unwrap();
    println!("operator pairs commute: {} ({} checked)", report.passed(), report.pairs_checked);
}
