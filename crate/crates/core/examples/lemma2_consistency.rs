//! Kernels of K-points of the jet space prolong consistently.

use pvring::basefield::BaseField;
use pvring::jetring::{JetOptions, JetRing};
use pvring::linsys::{KMatrix, LinearSystem};
use pvring::prolong::{check_closure, check_consistency, evaluation_kernel, lemma1_certify, JetEvaluation};

fn main() {
    let k = BaseField::builder(&["x", "t"])
        .delta("dx", &[("x", "1")])
        .parameter("t")
        .build()
        .unwrap();
    let sys = LinearSystem::parse(k, 2, &[], &[("dx", &[&["0", "0"], &["0", "0"]])]).unwrap();
    let ring = JetRing::new(sys, JetOptions::default()).unwrap();

    let entries = [["t^2 + 1", "t"], ["3", "t^3 - t"]];
    let z = KMatrix::from_rows(
        entries
            .iter()
            .map(|row| row.iter().map(|e| ring.field().parse(e).unwrap()).collect())
            .collect(),
    );
    let ev = JetEvaluation::from_matrix(&ring, z, 2).unwrap();
    let a = evaluation_kernel(&ring, &ev, 1).unwrap();
    println!("kernel at level 1:");
    for g in a.generators() {
        println!("  {}", ring.render_poly(g));
    }
    println!("closure hypothesis holds: {}", check_closure(&ring, &a).unwrap().passed);
    let cert = check_consistency(&ring, &a).unwrap();
    println!("{}", cert.render_text(&ring));
    let a2 = evaluation_kernel(&ring, &ev, 2).unwrap();
    println!("level-2 kernel restricts to the level-1 kernel: {}", lemma1_certify(&ring, &a, &a2).unwrap());
}
