use super::rational_function::RationalFunction;
use crate::polyring::Field;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Automorphism,
    Derivation,
    Parameter,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::Automorphism => "automorphism",
            OperatorKind::Derivation => "derivation",
            OperatorKind::Parameter => "parameter derivation",
        })
    }
}

/// An operator on ℚ(v₁,…,v_m) given by the images of the generators.
///
/// `images[v]` is where variable `v` goes (for derivations: its derivative).
/// Automorphisms also carry the images under their inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpec {
    kind: OperatorKind,
    id: String,
    images: Vec<RationalFunction>,
    inverse_images: Vec<RationalFunction>,
}

/// Substitution hit a pole.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("domain error: operator '{operator}' sends the denominator of {element} to zero")]
pub struct DomainError {
    pub operator: String,
    pub element: String,
}

impl OperatorSpec {
    pub fn automorphism(
        id: impl Into<String>,
        images: Vec<RationalFunction>,
        inverse_images: Vec<RationalFunction>,
    ) -> Self {
        assert_eq!(images.len(), inverse_images.len());
        OperatorSpec {
            kind: OperatorKind::Automorphism,
            id: id.into(),
            images,
            inverse_images,
        }
    }

    pub fn derivation(id: impl Into<String>, images: Vec<RationalFunction>) -> Self {
        OperatorSpec {
            kind: OperatorKind::Derivation,
            id: id.into(),
            images,
            inverse_images: Vec::new(),
        }
    }

    pub fn parameter(id: impl Into<String>, images: Vec<RationalFunction>) -> Self {
        OperatorSpec {
            kind: OperatorKind::Parameter,
            id: id.into(),
            images,
            inverse_images: Vec::new(),
        }
    }

    /// The identity automorphism on `nvars` generators.
    pub fn identity(id: impl Into<String>, nvars: usize) -> Self {
        let ids: Vec<_> = (0..nvars).map(RationalFunction::var).collect();
        Self::automorphism(id, ids.clone(), ids)
    }

    /// `d/dv` on `nvars` generators.
    pub fn partial_wrt(id: impl Into<String>, kind: OperatorKind, nvars: usize, v: usize) -> Self {
        let images = (0..nvars)
            .map(|i| RationalFunction::from_int((i == v) as i64))
            .collect();
        OperatorSpec {
            kind,
            id: id.into(),
            images,
            inverse_images: Vec::new(),
        }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn images(&self) -> &[RationalFunction] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[RationalFunction] {
        &self.inverse_images
    }

    pub fn is_automorphism(&self) -> bool {
        self.kind == OperatorKind::Automorphism
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    /// Automorphisms act by substitution, derivations by the Leibniz and quotient rules.
    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction, DomainError> {
        match self.kind {
            OperatorKind::Automorphism => self.substitute(f, &self.images),
            _ => Ok(f.derive(&self.images)),
        }
    }

    /// Applies the inverse automorphism. Panics for derivations.
    pub fn apply_inverse(&self, f: &RationalFunction) -> Result<RationalFunction, DomainError> {
        assert!(self.is_automorphism(), "only automorphisms have inverses");
        self.substitute(f, &self.inverse_images)
    }

    fn substitute(
        &self,
        f: &RationalFunction,
        images: &[RationalFunction],
    ) -> Result<RationalFunction, DomainError> {
        if f.max_var().is_none() {
            return Ok(f.clone());
        }
        f.substitute(images).map_err(|_| DomainError {
            operator: self.id.clone(),
            element: f.to_string(),
        })
    }

    /// Whether the operator acts trivially on `f` (fixes it, or kills it for derivations).
    pub fn is_trivial_on(&self, f: &RationalFunction) -> Result<bool, DomainError> {
        let g = self.apply(f)?;
        Ok(match self.kind {
            OperatorKind::Automorphism => &g == f,
            _ => g.is_zero(),
        })
    }
}
