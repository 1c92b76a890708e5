use super::*;
use crate::polyring::{Monomial, Poly, Rational, TermOrder};
use proptest::prelude::*;

fn shift_field() -> BaseField {
    BaseField::builder(&["x", "t"])
        .sigma("s", &[("x", "x + 1")], &[("x", "x - 1")])
        .delta("dx", &[("x", "1")])
        .parameter("t")
        .build()
        .unwrap()
}

fn rf(k: &BaseField, s: &str) -> RationalFunction {
    k.parse(s).unwrap()
}

#[test]
fn operator_actions() {
    let k = shift_field();
    let s = k.sigma("s").unwrap();
    assert_eq!(k.render(&s.apply(&rf(&k, "x^2")).unwrap()), "x^2 + 2*x + 1");
    assert_eq!(k.render(&k.partial().apply(&rf(&k, "1/t")).unwrap()), "-1/t^2");
    let d = k.delta("dx").unwrap();
    assert_eq!(k.render(&d.apply(&rf(&k, "x*t")).unwrap()), "t");
}

#[test]
fn canonical_fractions() {
    let k = shift_field();
    let f = rf(&k, "(2*x^2 - 2)/(4*x + 4)");
    assert_eq!(k.render(&f), "1/2*x - 1/2");
    let g = rf(&k, "x/(-2*t + 2*x)");
    assert_eq!(k.render(&g), "1/2*x/(x - t)");
    assert_eq!(rf(&k, "1/x - 1/x"), RationalFunction::zero());
    assert_eq!(rf(&k, "(x + t)/(x*t)"), rf(&k, "1/t + 1/x"));
    let h = rf(&k, "-t/(x^2*t + 1)");
    assert_eq!(k.parse(&k.render(&h)).unwrap(), h);
}

#[test]
fn zero_denominator_is_a_domain_error() {
    let k = BaseField::builder(&["x"])
        .sigma("s", &[("x", "x + 1")], &[("x", "x - 1")])
        .parameter("x")
        .build()
        .unwrap();
    let s = k.sigma("s").unwrap();
    let err = s.apply(&rf(&k, "1/(x + 1)")).unwrap();
    assert_eq!(k.render(&err), "1/(x + 2)");
    let sub = RationalFunction::var(0).substitute(&[RationalFunction::zero()]).unwrap();
    assert!(sub.is_zero());
    assert!(rf(&k, "1/x").substitute(&[RationalFunction::zero()]).is_err());
}

#[test]
fn commutation_checks() {
    assert!(shift_field().check_commutation().unwrap().passed());

    let k = BaseField::builder(&["x", "t"])
        .sigma("s", &[("x", "t*x")], &[("x", "x/t")])
        .delta("dx", &[("x", "1")])
        .parameter("t")
        .build()
        .unwrap();
    let report = k.check_commutation().unwrap();
    let fail = report
        .failures
        .iter()
        .find(|f| f.first == "s" && f.second == "dx" && f.var == "x")
        .expect("s and dx fail to commute on x");
    assert_eq!(k.render(&fail.first_second), "1");
    assert_eq!(k.render(&fail.second_first), "t");
}

#[test]
fn parameter_alone_is_rejected() {
    let err = BaseField::builder(&["t"]).parameter("t").build().unwrap_err();
    assert_eq!(err, BaseFieldError::NoSigmaDelta);
}

#[test]
fn wrong_inverse_is_rejected() {
    let err = BaseField::builder(&["x", "t"])
        .sigma("s", &[("x", "x + 1")], &[("x", "x + 1")])
        .parameter("t")
        .build()
        .unwrap_err();
    assert!(matches!(err, BaseFieldError::InverseMismatch { .. }));
}

#[test]
fn constants() {
    let k = shift_field();
    assert!(k.is_constant(&rf(&k, "t")).unwrap());
    assert!(!k.is_constant(&rf(&k, "x")).unwrap());
    assert!(k.is_constant(&rf(&k, "3/7")).unwrap());
}

fn arb_qpoly() -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(((0u32..3, 0u32..3), -3i64..4), 1..4).prop_map(|ts| {
        Poly::from_terms(
            ts.into_iter()
                .map(|((a, b), n)| (Monomial::from_dense(&[a, b]), Rational::from(n))),
            TermOrder::Grevlex,
        )
    })
}

fn arb_rf() -> impl Strategy<Value = RationalFunction> {
    (arb_qpoly(), arb_qpoly())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RationalFunction::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn operators_respect_products(f in arb_rf(), g in arb_rf()) {
        let k = shift_field();
        let fg = f.mul(&g);
        let s = k.sigma("s").unwrap();
        prop_assert_eq!(s.apply(&fg).unwrap(), s.apply(&f).unwrap().mul(&s.apply(&g).unwrap()));
        for d in [k.delta("dx").unwrap(), k.partial()] {
            let lhs = d.apply(&fg).unwrap();
            let rhs = d.apply(&f).unwrap().mul(&g).add(&f.mul(&d.apply(&g).unwrap()));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn automorphism_inverse_roundtrip(f in arb_rf()) {
        let k = shift_field();
        let s = k.sigma("s").unwrap();
        prop_assert_eq!(s.apply(&s.apply_inverse(&f).unwrap()).unwrap(), f.clone());
        prop_assert_eq!(s.apply_inverse(&s.apply(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn canonicalization_is_idempotent(f in arb_rf()) {
        let again = RationalFunction::new(f.numer().clone(), f.denom().clone());
        prop_assert_eq!(&again, &f);
        let k = shift_field();
        prop_assert_eq!(k.parse(&k.render(&f)).unwrap(), f);
    }

    #[test]
    fn commuting_generators_commute_everywhere(f in arb_rf()) {
        let k = shift_field();
        let ops: Vec<_> = k.operators().collect();
        for (i, mu) in ops.iter().enumerate() {
            for tau in &ops[i + 1..] {
                let a = mu.apply(&tau.apply(&f).unwrap()).unwrap();
                let b = tau.apply(&mu.apply(&f).unwrap()).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }
}
