use super::{FilteredElement, JetRing, JetVar};
use crate::basefield::RationalFunction;
use crate::expr::{self, Evaluator, ParseError, Pos};
use crate::polyring::Field;
use num_bigint::BigInt;

struct JetEval<'a> {
    ring: &'a JetRing,
}

pub(super) fn parse(ring: &JetRing, text: &str, origin: Pos) -> Result<FilteredElement, ParseError> {
    let e = expr::parse_expr_at(text, origin)?;
    expr::eval(&JetEval { ring }, &e)
}

impl Evaluator for JetEval<'_> {
    type Value = FilteredElement;

    fn number(&self, n: &BigInt) -> FilteredElement {
        self.ring.constant(RationalFunction::from_bigint(n))
    }

    fn ident(&self, name: &str, pos: Pos) -> Result<FilteredElement, ParseError> {
        if name == "det" {
            return Ok(self.ring.det());
        }
        match self.ring.field().names().iter().position(|n| n == name) {
            Some(v) => Ok(self.ring.constant(RationalFunction::var(v))),
            None => Err(ParseError::new(pos, format!("unknown variable '{name}'"))),
        }
    }

    fn jet(&self, order: u32, row: usize, col: usize, pos: Pos) -> Result<FilteredElement, ParseError> {
        let n = self.ring.n();
        if row > n || col > n {
            return Err(ParseError::new(pos, format!("jet index out of range for n = {n}")));
        }
        let order = order as usize;
        if order > self.ring.dmax() {
            return Err(ParseError::new(
                pos,
                format!("jet order {order} exceeds D_max = {}", self.ring.dmax()),
            ));
        }
        Ok(self
            .ring
            .jet(JetVar::new(order, row - 1, col - 1))
            .expect("order checked"))
    }

    fn add(&self, a: FilteredElement, b: FilteredElement) -> FilteredElement {
        self.ring.add(&a, &b)
    }
    fn sub(&self, a: FilteredElement, b: FilteredElement) -> FilteredElement {
        self.ring.sub(&a, &b)
    }
    fn mul(&self, a: FilteredElement, b: FilteredElement) -> FilteredElement {
        self.ring.mul(&a, &b)
    }
    fn neg(&self, a: FilteredElement) -> FilteredElement {
        self.ring.neg(&a)
    }

    /// Only units of `S_d` may divide: nonzero elements of K times powers of det.
    fn div(&self, a: FilteredElement, b: FilteredElement, pos: Pos) -> Result<FilteredElement, ParseError> {
        let mut p = b.poly().clone();
        let mut k = 0u32;
        while !p.is_constant() {
            match p.div_exact(self.ring.det_poly()) {
                Some(q) => {
                    p = q;
                    k += 1;
                }
                None => {
                    return Err(ParseError::new(
                        pos,
                        "division by an element that is not a unit (only K and powers of det)",
                    ))
                }
            }
        }
        let c = match p.as_constant() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(ParseError::new(pos, "division by zero")),
        };
        // a / (c·det^k / det^e) = a·det^e / (c·det^k)
        let num = self.ring.mul(&a, &self.ring.pow(&self.ring.det(), b.det_power()));
        let num = self.ring.scale(&num, &c.inv());
        Ok(self.ring.mul(&num, &self.ring.det_inverse_power(k)))
    }

    fn pow(&self, a: FilteredElement, e: u32) -> FilteredElement {
        self.ring.pow(&a, e)
    }
}
