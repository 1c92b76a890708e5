use super::{FilteredElement, JetError, JetPoly, JetRing};
use crate::basefield::RationalFunction;
use crate::groebner::{groebner, saturate, GroebnerBasis, IdealPresentation};

/// A det-saturated ideal of `K[X, …, ∂^d X]`, standing for an ideal of `S_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetIdeal {
    level: usize,
    basis: GroebnerBasis<RationalFunction>,
}

impl JetIdeal {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn basis(&self) -> &GroebnerBasis<RationalFunction> {
        &self.basis
    }

    /// The reduced basis elements.
    pub fn generators(&self) -> &[JetPoly] {
        self.basis.basis()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.is_trivial()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_zero_ideal()
    }

    /// Membership in `S_d`: the numerator lies in the saturated ideal.
    pub fn contains(&self, f: &FilteredElement) -> bool {
        self.basis.contains(f.poly())
    }

    pub fn contains_poly(&self, p: &JetPoly) -> bool {
        self.basis.contains(p)
    }

    pub fn render(&self) -> Vec<String> {
        self.basis.render()
    }

    pub fn to_presentation(&self) -> IdealPresentation<RationalFunction> {
        self.basis.to_presentation()
    }
}

impl JetRing {
    /// The ideal of `S_level` generated by `gens`.
    pub fn ideal(&self, level: usize, gens: &[FilteredElement]) -> Result<JetIdeal, JetError> {
        let polys: Vec<JetPoly> = gens.iter().map(|g| g.poly().clone()).collect();
        self.ideal_from_polys(level, polys)
    }

    /// The det-saturation of the ideal generated by `polys` in level `level`.
    pub fn ideal_from_polys(&self, level: usize, polys: Vec<JetPoly>) -> Result<JetIdeal, JetError> {
        let ring = self.ring(level)?.clone();
        if let Some(p) = polys.iter().find(|p| self.level_of(p) > level) {
            return Err(JetError::Embed {
                from: self.level_of(p),
                to: level,
            });
        }
        let pres = IdealPresentation::new(ring, polys);
        let basis = if pres.generators().is_empty() {
            groebner(&pres, self.budget())?
        } else {
            saturate(&pres, self.det_poly(), self.budget())?
        };
        Ok(JetIdeal { level, basis })
    }

    /// The zero ideal of `S_level`.
    pub fn zero_ideal(&self, level: usize) -> Result<JetIdeal, JetError> {
        self.ideal_from_polys(level, Vec::new())
    }

    /// Whether re-saturating by `det` changes nothing.
    pub fn is_saturated(&self, ideal: &JetIdeal) -> Result<bool, JetError> {
        let again = self.ideal_from_polys(ideal.level, ideal.generators().to_vec())?;
        Ok(again.basis == ideal.basis)
    }

    /// The extension of `ideal` to a higher level.
    pub fn embed_ideal(&self, ideal: &JetIdeal, level: usize) -> Result<JetIdeal, JetError> {
        if level < ideal.level {
            return Err(JetError::Embed {
                from: ideal.level,
                to: level,
            });
        }
        let ring = self.ring(level)?.clone();
        Ok(JetIdeal {
            level,
            basis: ideal.basis.embed(ring),
        })
    }

    /// Normal form of the numerator, keeping the det power.
    pub fn normal_form(&self, ideal: &JetIdeal, f: &FilteredElement) -> FilteredElement {
        let p = ideal.basis.normal_form(f.poly());
        self.element(p, f.det_power(), f.level())
    }

    pub fn plain_groebner(
        &self,
        level: usize,
        polys: Vec<JetPoly>,
    ) -> Result<GroebnerBasis<RationalFunction>, JetError> {
        let ring = self.ring(level)?.clone();
        Ok(groebner(&IdealPresentation::new(ring, polys), self.budget())?)
    }
}
