//! Multivariate polynomials over an exact coefficient field, with term orders.

mod field;
mod monomial;
mod order;
mod poly;

pub use field::{CoeffText, Field, Rational};
pub use monomial::Monomial;
pub use order::{BlockOrder, TermOrder};
pub use poly::{render_monomial, render_poly, OrderMismatch, Poly};

use crate::expr::{self, Evaluator, ParseError, Pos};
use num_bigint::BigInt;
use std::marker::PhantomData;
use std::sync::Arc;

/// A declared variable universe together with its term order.
///
/// `coeff_names` names the generators of the coefficient field (empty over ℚ);
/// they are only used for parsing and printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    names: Arc<[String]>,
    coeff_names: Arc<[String]>,
    order: TermOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("duplicate variable name '{0}'")]
    DuplicateVariable(String),
    #[error("variable '{0}' clashes with a coefficient-field generator")]
    ClashesWithCoefficient(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
}

impl PolyRing {
    pub fn new(
        names: Vec<String>,
        coeff_names: Vec<String>,
        order: TermOrder,
    ) -> Result<Self, RingError> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(RingError::DuplicateVariable(n.clone()));
            }
            if coeff_names.contains(n) {
                return Err(RingError::ClashesWithCoefficient(n.clone()));
            }
        }
        Ok(PolyRing {
            names: names.into(),
            coeff_names: coeff_names.into(),
            order,
        })
    }

    /// Shorthand for a ring over ℚ with names given as a slice.
    pub fn over_q(names: &[&str], order: TermOrder) -> Self {
        Self::new(names.iter().map(|s| s.to_string()).collect(), Vec::new(), order)
            .expect("valid ring")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn coeff_names(&self) -> &[String] {
        &self.coeff_names
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_order(&self, order: TermOrder) -> Self {
        PolyRing {
            names: self.names.clone(),
            coeff_names: self.coeff_names.clone(),
            order,
        }
    }

    /// A larger universe with `extra` variables appended after the existing ones.
    /// Existing polynomials embed unchanged.
    pub fn extend(&self, extra: &[String], order: TermOrder) -> Result<Self, RingError> {
        let mut names: Vec<String> = self.names.to_vec();
        names.extend(extra.iter().cloned());
        Self::new(names, self.coeff_names.to_vec(), order)
    }

    /// The first `nvars` variables, same order kind.
    pub fn truncate(&self, nvars: usize) -> Self {
        PolyRing {
            names: self.names[..nvars].to_vec().into(),
            coeff_names: self.coeff_names.clone(),
            order: self.order.clone(),
        }
    }

    pub fn var<C: Field>(&self, v: usize) -> Poly<C> {
        assert!(v < self.nvars(), "variable index {v} out of range");
        Poly::var(v, self.order.clone())
    }

    pub fn zero<C: Field>(&self) -> Poly<C> {
        Poly::zero(self.order.clone())
    }

    pub fn one<C: Field>(&self) -> Poly<C> {
        Poly::one(self.order.clone())
    }

    pub fn constant<C: Field>(&self, c: C) -> Poly<C> {
        Poly::constant(c, self.order.clone())
    }

    pub fn render<C: Field>(&self, p: &Poly<C>) -> String {
        render_poly(p, &self.names, &self.coeff_names)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        render_monomial(m, &self.names)
    }

    pub fn parse<C: Field>(&self, text: &str) -> Result<Poly<C>, ParseError> {
        self.parse_at(text, Pos { line: 1, column: 1 })
    }

    pub fn parse_at<C: Field>(&self, text: &str, origin: Pos) -> Result<Poly<C>, ParseError> {
        let e = expr::parse_expr_at(text, origin)?;
        expr::eval(
            &PolyEval::<C> {
                ring: self,
                _c: PhantomData,
            },
            &e,
        )
    }
}

struct PolyEval<'a, C> {
    ring: &'a PolyRing,
    _c: PhantomData<C>,
}

impl<C: Field> Evaluator for PolyEval<'_, C> {
    type Value = Poly<C>;

    fn number(&self, n: &BigInt) -> Poly<C> {
        self.ring.constant(C::from_bigint(n))
    }

    fn ident(&self, name: &str, pos: Pos) -> Result<Poly<C>, ParseError> {
        if let Some(v) = self.ring.index_of(name) {
            return Ok(self.ring.var(v));
        }
        if let Some(i) = self.ring.coeff_names.iter().position(|n| n == name) {
            if let Some(g) = C::generator(i) {
                return Ok(self.ring.constant(g));
            }
        }
        Err(ParseError::new(pos, format!("unknown variable '{name}'")))
    }

    fn add(&self, a: Poly<C>, b: Poly<C>) -> Poly<C> {
        &a + &b
    }
    fn sub(&self, a: Poly<C>, b: Poly<C>) -> Poly<C> {
        &a - &b
    }
    fn mul(&self, a: Poly<C>, b: Poly<C>) -> Poly<C> {
        &a * &b
    }
    fn neg(&self, a: Poly<C>) -> Poly<C> {
        -&a
    }
    fn div(&self, a: Poly<C>, b: Poly<C>, pos: Pos) -> Result<Poly<C>, ParseError> {
        match b.as_constant() {
            Some(c) if c.is_zero() => Err(ParseError::new(pos, "division by zero")),
            Some(c) => Ok(a.scale(&c.inv())),
            None => Err(ParseError::new(
                pos,
                "division by a non-constant polynomial",
            )),
        }
    }
    fn pow(&self, a: Poly<C>, e: u32) -> Poly<C> {
        a.pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> PolyRing {
        PolyRing::over_q(&["x", "y", "z"], TermOrder::Grevlex)
    }

    #[test]
    fn parse_and_print() {
        let r = ring();
        let p: Poly<Rational> = r.parse("(x + 1)^2 - 1/2*y*z").unwrap();
        assert_eq!(r.render(&p), "x^2 - 1/2*y*z + 2*x + 1");
        let q: Poly<Rational> = r.parse(&r.render(&p)).unwrap();
        assert_eq!(p, q);
        assert!(r.parse::<Rational>("x/y").is_err());
        assert!(r.parse::<Rational>("w").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Poly<Rational>> {
        prop::collection::vec(
            ((0u32..3, 0u32..3, 0u32..3), -5i64..5, 1i64..4),
            0..5,
        )
        .prop_map(|ts| {
            Poly::from_terms(
                ts.into_iter().map(|((a, b, c), n, d)| {
                    (Monomial::from_dense(&[a, b, c]), Rational::new(n, d))
                }),
                TermOrder::Grevlex,
            )
        })
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        (0u32..4, 0u32..4, 0u32..4).prop_map(|(a, b, c)| Monomial::from_dense(&[a, b, c]))
    }

    fn arb_order() -> impl Strategy<Value = TermOrder> {
        prop_oneof![
            Just(TermOrder::Lex),
            Just(TermOrder::Grevlex),
            Just(TermOrder::block(vec![vec![2], vec![0, 1]])),
            Just(TermOrder::block(vec![vec![0, 2], vec![1]])),
        ]
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p + &q, &q + &p);
        }

        #[test]
        fn leading_term_is_multiplicative(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let pq = &p * &q;
            let (mp, cp) = p.leading_term().unwrap();
            let (mq, cq) = q.leading_term().unwrap();
            prop_assert_eq!(pq.leading_monomial().unwrap(), &mp.mul(mq));
            prop_assert_eq!(pq.leading_coeff().unwrap(), &cp.mul(cq));
        }

        #[test]
        fn orders_are_total_transitive_multiplicative(
            o in arb_order(), a in arb_mono(), b in arb_mono(), c in arb_mono(), m in arb_mono()
        ) {
            use std::cmp::Ordering::*;
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab.reverse(), o.cmp(&b, &a));
            prop_assert_eq!(ab == Equal, a == b);
            if ab == Less && o.cmp(&b, &c) == Less {
                prop_assert_eq!(o.cmp(&a, &c), Less);
            }
            if ab == Less {
                prop_assert_eq!(o.cmp(&a.mul(&m), &b.mul(&m)), Less);
            }
            prop_assert_ne!(o.cmp(&Monomial::one(), &a), Greater);
        }
    }
}
