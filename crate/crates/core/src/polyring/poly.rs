use super::{Field, Monomial, TermOrder};
use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

/// A sparse distributed polynomial: terms sorted strictly descending under
/// `order`, no zero coefficients. The first term is the leading term.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    terms: Vec<(Monomial, C)>,
    order: TermOrder,
}

/// Returned by the checked arithmetic entry points.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("usage error: mixed term orders ({left} vs {right})")]
pub struct OrderMismatch {
    pub left: String,
    pub right: String,
}

impl<C: Field> Poly<C> {
    pub fn zero(order: TermOrder) -> Self {
        Poly {
            terms: Vec::new(),
            order,
        }
    }

    pub fn constant(c: C, order: TermOrder) -> Self {
        Self::monomial(Monomial::one(), c, order)
    }

    pub fn one(order: TermOrder) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn monomial(m: Monomial, c: C, order: TermOrder) -> Self {
        if c.is_zero() {
            return Self::zero(order);
        }
        Poly {
            terms: vec![(m, c)],
            order,
        }
    }

    pub fn var(v: usize, order: TermOrder) -> Self {
        Self::monomial(Monomial::var(v), C::one(), order)
    }

    /// Collects arbitrary terms: sorts, merges equal monomials, drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>, order: TermOrder) -> Self {
        let mut v: Vec<(Monomial, C)> = terms.into_iter().filter(|t| !t.1.is_zero()).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = last.1.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { terms: out, order }
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant coefficient if this polynomial is a constant (zero gives zero).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exponent(v)).max().unwrap_or(0)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.terms.iter().filter_map(|t| t.0.max_var()).max()
    }

    pub fn uses_only(&self, pred: impl Fn(usize) -> bool) -> bool {
        self.terms.iter().all(|t| t.0.vars_all(&pred))
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.iter().any(|t| t.0.exponent(v) > 0)
    }

    fn check_order(&self, other: &Self) -> Result<(), OrderMismatch> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(OrderMismatch {
                left: self.order.name(),
                right: other.order.name(),
            })
        }
    }

    fn expect_order(&self, other: &Self) {
        if let Err(e) = self.check_order(other) {
            panic!("{e}");
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, OrderMismatch> {
        self.check_order(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, OrderMismatch> {
        self.check_order(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| {
            (m.clone(), if subtract { c.neg() } else { c.clone() })
        }));
        Poly {
            terms: out,
            order: self.order.clone(),
        }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order.clone());
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut all = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                all.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        Self::from_terms(all, self.order.clone())
    }

    /// Multiplies by the term `c * m`; order is preserved since term orders are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.order.clone());
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc.mul(c)))
                .collect(),
            order: self.order.clone(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(&Monomial::one(), c)
    }

    /// `self - c * m * other`, the elementary reduction step.
    pub fn sub_scaled(&self, c: &C, m: &Monomial, other: &Self) -> Self {
        self.expect_order(other);
        self.merge(&other.mul_term(m, c), true)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.order.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    /// Rescales to the field's primitive form where one exists.
    pub fn primitive(&self) -> Self {
        let coeffs: Vec<&C> = self.terms.iter().map(|t| &t.1).collect();
        match C::primitive_scale(&coeffs) {
            Some(s) if !s.is_one() => self.scale(&s),
            _ => self.clone(),
        }
    }

    /// Re-sorts the terms under a different order.
    pub fn with_order(&self, order: TermOrder) -> Self {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly { terms, order }
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))), self.order.clone())
    }

    /// Renames variables through an injective, order-compatible map.
    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::from_pairs(m.iter().map(|(v, e)| (f(v), e))), c.clone())),
            self.order.clone(),
        )
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Self {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            if e == 0 {
                return None;
            }
            let lowered = m.div(&Monomial::var(v)).unwrap();
            Some((lowered, c.mul(&C::from_int(e as i64))))
        });
        Self::from_terms(terms, self.order.clone())
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.expect_order(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let q = m.div(lm)?;
            let qc = c.mul(&lc_inv);
            rem = rem.sub_scaled(&qc, &q, divisor);
            quot.push((q, qc));
        }
        Some(Poly {
            terms: quot,
            order: self.order.clone(),
        })
    }

    /// Evaluates by substituting `values[v]` for each variable, in any commutative
    /// target described by the supplied closures.
    pub fn eval_with<T: Clone>(
        &self,
        zero: T,
        one: T,
        coeff: impl Fn(&C) -> T,
        var: impl Fn(usize) -> T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        let mut cache: std::collections::HashMap<(usize, u32), T> = Default::default();
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for (v, e) in m.iter() {
                let p = cache
                    .entry((v, e))
                    .or_insert_with(|| {
                        let base = var(v);
                        let mut r = one.clone();
                        for _ in 0..e {
                            r = mul(&r, &base);
                        }
                        r
                    })
                    .clone();
                t = mul(&t, &p);
            }
            acc = add(&acc, &t);
        }
        acc
    }
}

impl<C: Field> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.expect_order(rhs);
        self.merge(rhs, false)
    }
}

impl<C: Field> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.expect_order(rhs);
        self.merge(rhs, true)
    }
}

impl<C: Field> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.expect_order(rhs);
        self.product(rhs)
    }
}

impl<C: Field> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
            order: self.order.clone(),
        }
    }
}

impl<C: Field> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Field> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Field> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Field> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

/// Renders in canonical infix form: descending terms, explicit `*`, `^` exponents.
pub fn render_poly<C: Field>(p: &Poly<C>, names: &[String], coeff_names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let mut ct = c.render(coeff_names);
        if m.is_one() && !ct.negative && i > 0 {
            if let Some(rest) = ct.body.strip_prefix('-') {
                ct.body = rest.to_string();
                ct.negative = true;
            }
        }
        let mono = render_monomial(m, names);
        let body = if m.is_one() {
            ct.body.clone()
        } else if ct.body == "1" {
            mono
        } else if ct.atomic {
            format!("{}*{}", ct.body, mono)
        } else {
            format!("({})*{}", ct.body, mono)
        };
        match (i, ct.negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

pub fn render_monomial(m: &Monomial, names: &[String]) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.iter()
        .map(|(v, e)| {
            let name = names.get(v).cloned().unwrap_or_else(|| format!("_v{v}"));
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Rational;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn x() -> Poly<Rational> {
        Poly::var(0, TermOrder::Grevlex)
    }
    fn y() -> Poly<Rational> {
        Poly::var(1, TermOrder::Grevlex)
    }
    fn one() -> Poly<Rational> {
        Poly::one(TermOrder::Grevlex)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(render_poly(&p, &names(), &[]), "x^2 - y^2");
    }

    #[test]
    fn cancellation_gives_empty() {
        let p = &x() + &one();
        assert!((&p + &(-&p)).terms().is_empty());
    }

    #[test]
    fn square_of_binomial() {
        let p = (&x() + &one()).pow(2);
        assert_eq!(render_poly(&p, &names(), &[]), "x^2 + 2*x + 1");
    }

    #[test]
    #[should_panic(expected = "mixed term orders")]
    fn mixed_orders_panic() {
        let a = x();
        let b = Poly::<Rational>::var(1, TermOrder::Lex);
        let _ = &a + &b;
    }

    #[test]
    fn checked_mixed_orders() {
        let b = Poly::<Rational>::var(1, TermOrder::Lex);
        assert!(x().try_add(&b).is_err());
        assert!(x().try_mul(&y()).is_ok());
    }

    #[test]
    fn exact_division() {
        let p = &(&x() + &y()) * &(&x() - &one());
        assert_eq!(p.div_exact(&(&x() - &one())), Some(&x() + &y()));
        assert_eq!(p.div_exact(&(&x() + &one())), None);
    }

    #[test]
    fn derivative_and_rendering_of_fractions() {
        let p = Poly::from_terms(
            [
                (Monomial::from_dense(&[3, 0]), Rational::new(1, 2)),
                (Monomial::from_dense(&[0, 1]), Rational::new(-2, 3)),
            ],
            TermOrder::Grevlex,
        );
        assert_eq!(render_poly(&p, &names(), &[]), "1/2*x^3 - 2/3*y");
        assert_eq!(render_poly(&p.derivative(0), &names(), &[]), "3/2*x^2");
    }
}
