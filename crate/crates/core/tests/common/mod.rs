#![allow(dead_code)]

use pvring::groebner::{eliminate, groebner, saturate, Budget, IdealPresentation};
use pvring::polyring::{PolyRing, Rational, TermOrder};

pub struct OracleCase {
    pub name: String,
    pub vars: Vec<String>,
    pub order: String,
    pub op: String,
    pub gens: Vec<String>,
    pub expect: Vec<String>,
}

pub fn oracle_cases() -> Vec<OracleCase> {
    let text = include_str!("../fixtures/kernel_oracle.txt");
    let mut cases = Vec::new();
    let mut cur: Option<OracleCase> = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix("[case ").and_then(|l| l.strip_suffix(']')) {
            cases.extend(cur.take());
            cur = Some(OracleCase {
                name: name.to_string(),
                vars: vec![],
                order: String::new(),
                op: String::new(),
                gens: vec![],
                expect: vec![],
            });
            continue;
        }
        let (key, value) = line.split_once(" = ").expect("key = value");
        let c = cur.as_mut().expect("inside a case");
        let list = |sep: &str| value.split(sep).map(|s| s.trim().to_string()).collect::<Vec<_>>();
        match key {
            "vars" => c.vars = list(","),
            "order" => c.order = value.to_string(),
            "op" => c.op = value.to_string(),
            "gens" => c.gens = list(";"),
            "expect" => c.expect = if value == "0" { vec![] } else { list(";") },
            other => panic!("unknown key {other}"),
        }
    }
    cases.extend(cur);
    cases
}

/// Runs one case and returns the canonical rendering of the result.
pub fn run_case(c: &OracleCase) -> Vec<String> {
    let order = match c.order.as_str() {
        "lex" => TermOrder::Lex,
        "grevlex" => TermOrder::Grevlex,
        o => panic!("unknown order {o}"),
    };
    let ring = PolyRing::new(c.vars.clone(), vec![], order).unwrap();
    let gens: Vec<&str> = c.gens.iter().map(String::as_str).collect();
    let ideal = IdealPresentation::<Rational>::parse(ring.clone(), &gens).unwrap();
    let budget = Budget::default();
    let mut words = c.op.split_whitespace();
    let gb = match words.next().unwrap() {
        "groebner" => groebner(&ideal, &budget).unwrap(),
        "eliminate" => {
            let keep: Vec<usize> = words.map(|w| ring.index_of(w).unwrap()).collect();
            eliminate(&ideal, &keep, &budget).unwrap()
        }
        "saturate" => {
            let f = ring.parse(&words.collect::<Vec<_>>().join(" ")).unwrap();
            saturate(&ideal, &f, &budget).unwrap()
        }
        op => panic!("unknown op {op}"),
    };
    gb.render()
}
