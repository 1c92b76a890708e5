use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The exact-field contract the polynomial kernel is generic over.
///
/// Implementations must be canonical: `==` decides equality of field elements.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// The `i`-th generator of the field over ℚ, if the field has named generators.
    fn generator(_index: usize) -> Option<Self> {
        None
    }

    /// A scalar that turns `coeffs` into coprime integers with a positive first entry,
    /// for fields where that notion exists.
    fn primitive_scale(_coeffs: &[&Self]) -> Option<Self> {
        None
    }

    /// Printing hook used by polynomial rendering. `names` are the generator names.
    fn render(&self, names: &[String]) -> CoeffText;
}

/// A coefficient split into sign and magnitude for infix printing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffText {
    pub negative: bool,
    pub body: String,
    /// Whether `body` can be followed by `*monomial` without parentheses.
    pub atomic: bool,
}

impl CoeffText {
    pub fn signed(&self) -> String {
        if self.negative {
            format!("-{}", self.body)
        } else {
            self.body.clone()
        }
    }
}

/// Arbitrary-precision rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_int(n: i64) -> Self {
        n.into()
    }
    fn from_bigint(n: &BigInt) -> Self {
        Rational(BigRational::from_integer(n.clone()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "division by zero in ℚ");
        Rational(self.0.recip())
    }

    fn primitive_scale(coeffs: &[&Self]) -> Option<Self> {
        let first = coeffs.first()?;
        let mut den_lcm = BigInt::one();
        for c in coeffs {
            den_lcm = den_lcm.lcm(c.0.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in coeffs {
            let scaled = c.0.numer() * (&den_lcm / c.0.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        if num_gcd.is_zero() {
            return None;
        }
        let mut s = BigRational::new(den_lcm, num_gcd);
        if first.0.is_negative() {
            s = -s;
        }
        Some(Rational(s))
    }

    fn render(&self, _names: &[String]) -> CoeffText {
        CoeffText {
            negative: self.0.is_negative(),
            body: self.abs().to_string(),
            atomic: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_scale_clears_denominators() {
        let cs = [Rational::new(-2, 3), Rational::new(4, 9)];
        let refs: Vec<&Rational> = cs.iter().collect();
        let s = Rational::primitive_scale(&refs).unwrap();
        let scaled: Vec<Rational> = cs.iter().map(|c| c.mul(&s)).collect();
        assert_eq!(scaled, vec![Rational::from(3), Rational::from(-2)]);
    }

    #[test]
    fn rational_display() {
        assert_eq!(Rational::new(6, -4).to_string(), "-3/2");
        assert_eq!(Rational::from(5).to_string(), "5");
    }
}
