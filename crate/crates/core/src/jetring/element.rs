use super::JetPoly;

/// `poly / det(X)^det_power` at a declared level. When `det_power > 0` the
/// numerator is not divisible by `det(X)`. Arithmetic goes through
/// [`JetRing`](super::JetRing), which knows the determinant polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FilteredElement {
    poly: JetPoly,
    det_power: u32,
    level: usize,
}

impl FilteredElement {
    pub(crate) fn raw(poly: JetPoly, det_power: u32, level: usize) -> Self {
        FilteredElement {
            poly,
            det_power,
            level,
        }
    }

    /// A polynomial element (no determinant in the denominator).
    pub fn from_poly(poly: JetPoly, level: usize) -> Self {
        Self::raw(poly, 0, level)
    }

    pub fn poly(&self) -> &JetPoly {
        &self.poly
    }

    pub fn det_power(&self) -> u32 {
        self.det_power
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Equality as elements, ignoring the declared level.
    pub fn same_value(&self, other: &Self) -> bool {
        self.poly == other.poly && self.det_power == other.det_power
    }
}
