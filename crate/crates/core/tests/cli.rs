use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn pvring(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pvring")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_exit_codes() {
    assert_eq!(pvring(&["check", &fixture("mixed.pv")]).0, 0);
    let (code, out, _) = pvring(&["check", &fixture("perturbed.pv")]);
    assert_eq!(code, 1);
    assert!(out.contains("SD s dx: FAILED, residual [[1]]"));
    let (_, out, _) = pvring(&["--machine", "check", &fixture("perturbed.pv")]);
    assert!(out.contains("integrability.SD.s.dx.residual=[[1]]"));
    assert!(out.ends_with("status=fail\n"));
}

#[test]
fn counterexample_trace() {
    let (code, out, _) = pvring(&["counterexample"]);
    assert_eq!(code, 0);
    assert!(out.contains("trivial: yes"));
    assert!(out.ends_with("1 ∈ b\n"));
}

#[test]
fn chain_on_constant_solution() {
    let (code, out, _) = pvring(&["chain", &fixture("delta_zero.pv"), "--depth", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("X^(3)[1,1]"));
    assert!(out.ends_with("result: all checks passed\n"));
}

#[test]
fn prolong_certificate() {
    let (code, out, _) = pvring(&["prolong", &fixture("delta_zero.pv"), "--level", "0"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("∂a1 = X'[1,1]"));
    assert!(out.ends_with("1 ∉ b\n"));
}

#[test]
fn kernel_commands() {
    let k = fixture("kernel.pv");
    let (code, out, _) = pvring(&["groebner", &k, "--ideal", "sos"]);
    assert_eq!((code, out.as_str()), (0, "x*y\nx^2 + y^2\ny^3\n"));
    assert_eq!(pvring(&["member", &k, "--ideal", "sos", "--poly", "y^3"]).0, 0);
    let (code, out, _) = pvring(&["member", &k, "--ideal", "sos", "--poly", "y^2"]);
    assert_eq!(code, 1);
    assert!(out.contains("normal form: y^2"));
    let (_, out, _) = pvring(&["eliminate", &k, "--ideal", "twisted_cubic", "--keep", "x,y,z"]);
    assert_eq!(out, "y^3 - z^2\nx*z - y^2\nx*y - z\nx^2 - y\n");
    let (_, out, _) = pvring(&["saturate", &k, "--ideal", "cross", "--by", "x"]);
    assert_eq!(out, "z\ny\n");
}

#[test]
fn constants_report() {
    let (code, out, _) = pvring(&["constants", &fixture("delta_zero.pv"), "--level", "3", "--degree-bound", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("constants: 3"));
    assert!(!out.contains("[new]"));
}

#[test]
fn failure_exit_codes() {
    let dir = std::env::temp_dir().join(format!("pvring-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.pv");
    std::fs::write(&bad, "[field]\nvars = x, t\nparam = t\n[delta d]\nx = 1 +* 2\n[system]\nn = 1\nB d = [[0]]\n").unwrap();
    let (code, _, err) = pvring(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 5, column"), "{err}");

    let k = fixture("kernel.pv");
    let (code, _, err) = pvring(&["--max-reductions", "1", "groebner", &k, "--ideal", "textbook"]);
    assert_eq!(code, 3);
    assert!(err.contains("budget exhausted"));

    let (code, _, err) = pvring(&["constants", &fixture("shift_t.pv"), "--level", "1"]);
    assert_eq!(code, 4);
    assert!(err.contains("unsupported"), "{err}");
    assert_eq!(pvring(&["chain", &fixture("delta_zero.pv"), "--depth", "9"]).0, 4);
}
