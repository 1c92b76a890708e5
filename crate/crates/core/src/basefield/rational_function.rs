use super::gcd::{gcd, normalize};
use crate::expr::{self, Evaluator, ParseError, Pos};
use crate::polyring::{render_poly, CoeffText, Field, Poly, Rational, TermOrder};
use num_bigint::BigInt;
use std::fmt;

type QPoly = Poly<Rational>;

/// An element of ℚ(v₁,…,v_m) in canonical form: numerator and denominator are
/// coprime, the denominator has coprime integer coefficients and a positive
/// leading coefficient under grevlex, and zero is `0/1`.
///
/// Variables are referred to by index; names only matter for parsing and printing.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: QPoly,
    den: QPoly,
}

fn qconst(c: Rational) -> QPoly {
    Poly::constant(c, TermOrder::Grevlex)
}

impl RationalFunction {
    /// Builds `num/den` and canonicalizes. Panics if `den` is zero.
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let num = num.with_order(TermOrder::Grevlex);
        let den = den.with_order(TermOrder::Grevlex);
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Self::rescaled(num, den)
    }

    /// Canonicalizes scaling only; caller guarantees coprimality.
    fn rescaled(num: QPoly, den: QPoly) -> Self {
        if let Some(c) = den.as_constant() {
            let inv = c.inv();
            return RationalFunction {
                num: num.scale(&inv),
                den: qconst(Rational::one()),
            };
        }
        let dn = normalize(&den);
        let s = den.leading_coeff().unwrap().div(dn.leading_coeff().unwrap());
        RationalFunction {
            num: num.scale(&s.inv()),
            den: dn,
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RationalFunction {
            num: p.with_order(TermOrder::Grevlex),
            den: qconst(Rational::one()),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(qconst(c))
    }

    pub fn var(v: usize) -> Self {
        Self::from_poly(Poly::var(v, TermOrder::Grevlex))
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Largest variable index occurring, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.num.max_var().max(self.den.max_var())
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        RationalFunction {
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        }
    }

    pub fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::rescaled(self.den.clone(), self.num.clone()))
        }
    }

    /// Substitutes `images[v]` for each variable `v`. Errors if the denominator
    /// vanishes under the substitution.
    pub fn substitute(&self, images: &[RationalFunction]) -> Result<Self, ZeroDenominator> {
        let num = subst_poly(&self.num, images);
        if self.den.is_one() {
            return Ok(num);
        }
        let den = subst_poly(&self.den, images);
        if den.is_zero() {
            return Err(ZeroDenominator);
        }
        Ok(num.div(&den))
    }

    /// Applies the derivation sending variable `v` to `images[v]`.
    pub fn derive(&self, images: &[RationalFunction]) -> Self {
        let dn = derive_poly(&self.num, images);
        if self.den.is_one() {
            return dn;
        }
        let dd = derive_poly(&self.den, images);
        let n = Self::from_poly(self.num.clone());
        let d = Self::from_poly(self.den.clone());
        dn.mul(&d).sub(&n.mul(&dd)).div(&d.mul(&d))
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return render_poly(&self.num, names, &[]);
        }
        let num = render_poly(&self.num, names, &[]);
        let num = if self.num.len() > 1 { format!("({num})") } else { num };
        let den = render_poly(&self.den, names, &[]);
        let simple_den = self.den.len() == 1
            && self.den.terms()[0].1.is_one()
            && self.den.terms()[0].0.iter().count() == 1;
        if simple_den {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }

    /// Parses the shared expression syntax with variables from `names`.
    pub fn parse(text: &str, names: &[String]) -> Result<Self, ParseError> {
        Self::parse_at(text, names, Pos { line: 1, column: 1 })
    }

    pub fn parse_at(text: &str, names: &[String], origin: Pos) -> Result<Self, ParseError> {
        let e = expr::parse_expr_at(text, origin)?;
        expr::eval(&RfEval { names }, &e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("substitution produces a zero denominator")]
pub struct ZeroDenominator;

fn subst_poly(p: &QPoly, images: &[RationalFunction]) -> RationalFunction {
    if p.is_constant() {
        return RationalFunction::from_poly(p.clone());
    }
    p.eval_with(
        RationalFunction::zero(),
        RationalFunction::one(),
        |c| RationalFunction::from_rational(c.clone()),
        |v| images[v].clone(),
        |a, b| a.add(b),
        |a, b| a.mul(b),
    )
}

fn derive_poly(p: &QPoly, images: &[RationalFunction]) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    let mut vars: Vec<usize> = p.terms().iter().flat_map(|(m, _)| m.iter().map(|(v, _)| v)).collect();
    vars.sort_unstable();
    vars.dedup();
    for v in vars {
        let img = &images[v];
        if img.is_zero() {
            continue;
        }
        acc = acc.add(&RationalFunction::from_poly(p.derivative(v)).mul(img));
    }
    acc
}

impl Field for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Poly::zero(TermOrder::Grevlex))
    }
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }
    fn from_bigint(n: &BigInt) -> Self {
        Self::from_rational(Rational::from_bigint(n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        Self::new(num, &self.den * &d2)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        Self::rescaled(&n1 * &n2, &d1 * &d2)
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero rational function")
    }

    fn generator(index: usize) -> Option<Self> {
        Some(Self::var(index))
    }

    fn render(&self, names: &[String]) -> CoeffText {
        let single_negative = self.num.len() == 1 && self.num.terms()[0].1.is_negative();
        let shown = if single_negative { self.neg() } else { self.clone() };
        CoeffText {
            negative: single_negative,
            body: shown.render(names),
            atomic: self.den.is_one() && self.num.len() == 1,
        }
    }
}

fn cancel(n: &QPoly, d: &QPoly) -> (QPoly, QPoly) {
    if d.is_constant() {
        return (n.clone(), d.clone());
    }
    let g = gcd(n, d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::from_rational(c)
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

/// Displays with generic names `v0, v1, …`; use [`RationalFunction::render`] for real names.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.max_var().map_or(0, |v| v + 1);
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

struct RfEval<'a> {
    names: &'a [String],
}

impl Evaluator for RfEval<'_> {
    type Value = RationalFunction;

    fn number(&self, n: &BigInt) -> RationalFunction {
        RationalFunction::from_bigint(n)
    }
    fn ident(&self, name: &str, pos: Pos) -> Result<RationalFunction, ParseError> {
        match self.names.iter().position(|n| n == name) {
            Some(i) => Ok(RationalFunction::var(i)),
            None => Err(ParseError::new(pos, format!("unknown variable '{name}'"))),
        }
    }
    fn add(&self, a: RationalFunction, b: RationalFunction) -> RationalFunction {
        Field::add(&a, &b)
    }
    fn sub(&self, a: RationalFunction, b: RationalFunction) -> RationalFunction {
        Field::sub(&a, &b)
    }
    fn mul(&self, a: RationalFunction, b: RationalFunction) -> RationalFunction {
        Field::mul(&a, &b)
    }
    fn neg(&self, a: RationalFunction) -> RationalFunction {
        Field::neg(&a)
    }
    fn div(
        &self,
        a: RationalFunction,
        b: RationalFunction,
        pos: Pos,
    ) -> Result<RationalFunction, ParseError> {
        match b.try_inv() {
            Some(bi) => Ok(Field::mul(&a, &bi)),
            None => Err(ParseError::new(pos, "division by zero")),
        }
    }
    fn pow(&self, a: RationalFunction, e: u32) -> RationalFunction {
        a.pow(e as i64)
    }
}
