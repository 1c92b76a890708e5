mod common;

#[test]
fn reduced_bases_match_the_independent_oracle() {
    let cases = common::oracle_cases();
    assert!(cases.len() >= 10);
    for c in &cases {
        assert_eq!(common::run_case(c), c.expect, "case {}", c.name);
    }
}
