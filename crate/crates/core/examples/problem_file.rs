//! Reading a problem file and driving the same commands the binary exposes.

use pvring::cli::{run, ProblemFile};

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/mixed.pv");
    let text = std::fs::read_to_string(path).unwrap();
    let problem = ProblemFile::parse(&text).unwrap();
    print!("canonical form:\n{}", problem.print());

    for args in [
        vec!["pvring", "check", path],
        vec!["pvring", "--machine", "chain", path, "--depth", "1"],
    ] {
        let out = run(&args);
        println!("\n$ {} (exit {})", args[1..].join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
    }

    match ProblemFile::parse("[field]\nvars = x\n[sigma s]\nx = x +\n[system]\nn = 0\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("\nmalformed file: {e}"),
    }
}
