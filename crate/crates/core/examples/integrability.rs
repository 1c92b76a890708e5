//! Integrability conditions for an integrable system and a perturbed one.

use pvring::basefield::BaseField;
use pvring::linsys::LinearSystem;

fn main() {
    let field = || {
        BaseField::builder(&["x", "t"])
            .sigma("s", &[("x", "x + 1")], &[("x", "x - 1")])
            .delta("dx", &[("x", "1")])
            .parameter("t")
            .build()
            .unwrap()
    };
    for a in ["t", "x"] {
        let sys = LinearSystem::parse(field(), 1, &[("s", &[&[a]])], &[("dx", &[&["t"]])]).unwrap();
        let report = sys.check_integrability().unwrap();
        println!("A = ({a}), B = (t):");
        for c in &report.checks {
            println!(
                "  {} {} {}: {} (residual {})",
                c.condition,
                c.first,
                c.second,
                if c.passed { "ok" } else { "fails" },
                sys.render_matrix(&c.residual)
            );
        }
    }

    let two = BaseField::builder(&["x", "y", "t"])
        .sigma("s1", &[("y", "2*y")], &[("y", "y/2")])
        .sigma("s2", &[("x", "x + 1")], &[("x", "x - 1")])
        .parameter("t")
        .build()
        .unwrap();
    let sys = LinearSystem::parse(two, 1, &[("s1", &[&["2"]]), ("s2", &[&["y"]])], &[]).unwrap();
    let report = sys.check_integrability().unwrap();
    println!("two shifts, A_s1 = (2), A_s2 = (y): integrable = {}", report.passed());
    for (a, b) in &report.literal_only {
        println!("  ({a}, {b}) satisfies σ_i(A_j) = σ_j(A_i)·A_j but not the commutation identity");
    }
}
