//! With two parameter derivations the prolongation of a consistent ideal can contain 1.

use pvring::prolong::counterexample_two_derivations;

fn main() {
    let c = counterexample_two_derivations();
    println!("{}", c.render_text());
}
