//! The base field K = ℚ(v₁,…,v_m) with commuting automorphisms, derivations and
//! one parameter derivation ∂.

mod gcd;
mod operator;
mod rational_function;

pub use gcd::gcd;
pub use operator::{DomainError, OperatorKind, OperatorSpec};
pub use rational_function::{RationalFunction, ZeroDenominator};

use crate::expr::ParseError;
use crate::polyring::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseVar {
    pub name: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BaseFieldError {
    #[error("duplicate variable name '{0}'")]
    DuplicateVariable(String),
    #[error("duplicate operator id '{0}'")]
    DuplicateOperator(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("at least one automorphism or derivation besides the parameter derivation is required")]
    NoSigmaDelta,
    #[error("operator '{0}' has the wrong number of generator images")]
    ImageCount(String),
    #[error("operator '{id}' is declared as {found}, expected {expected}")]
    WrongKind {
        id: String,
        expected: OperatorKind,
        found: OperatorKind,
    },
    #[error("automorphism '{id}': inverse images do not invert the images on '{var}'")]
    InverseMismatch { id: String, var: String },
    #[error("no parameter derivation given")]
    MissingParameter,
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

/// A presentation of a ΣΔ∂-field: generators plus operator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseField {
    vars: Vec<BaseVar>,
    names: Vec<String>,
    sigmas: Vec<OperatorSpec>,
    deltas: Vec<OperatorSpec>,
    partial: OperatorSpec,
}

/// One failing pair from [`BaseField::check_commutation`]: `first(second(var))`
/// differs from `second(first(var))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationFailure {
    pub first: String,
    pub second: String,
    pub var: String,
    pub first_second: RationalFunction,
    pub second_first: RationalFunction,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommutationReport {
    pub pairs_checked: usize,
    pub failures: Vec<CommutationFailure>,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl BaseField {
    pub fn new(
        names: Vec<String>,
        sigmas: Vec<OperatorSpec>,
        deltas: Vec<OperatorSpec>,
        partial: OperatorSpec,
    ) -> Result<Self, BaseFieldError> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(BaseFieldError::DuplicateVariable(n.clone()));
            }
        }
        if sigmas.is_empty() && deltas.is_empty() {
            return Err(BaseFieldError::NoSigmaDelta);
        }
        let m = names.len();
        let expect_kind = |op: &OperatorSpec, k: OperatorKind| {
            if op.kind() != k {
                return Err(BaseFieldError::WrongKind {
                    id: op.id().to_string(),
                    expected: k,
                    found: op.kind(),
                });
            }
            if op.nvars() != m || op.images().iter().chain(op.inverse_images()).any(|f| f.max_var().is_some_and(|v| v >= m)) {
                return Err(BaseFieldError::ImageCount(op.id().to_string()));
            }
            Ok(())
        };
        let mut ids: Vec<&str> = Vec::new();
        for (op, k) in sigmas
            .iter()
            .map(|o| (o, OperatorKind::Automorphism))
            .chain(deltas.iter().map(|o| (o, OperatorKind::Derivation)))
            .chain(std::iter::once((&partial, OperatorKind::Parameter)))
        {
            expect_kind(op, k)?;
            if ids.contains(&op.id()) {
                return Err(BaseFieldError::DuplicateOperator(op.id().to_string()));
            }
            ids.push(op.id());
        }
        for s in &sigmas {
            for v in 0..m {
                let x = RationalFunction::var(v);
                let there = s.apply(&x)?;
                let back = s.apply_inverse(&there)?;
                let forth = s.apply(&s.apply_inverse(&x)?)?;
                if back != x || forth != x {
                    return Err(BaseFieldError::InverseMismatch {
                        id: s.id().to_string(),
                        var: names[v].clone(),
                    });
                }
            }
        }
        Ok(BaseField {
            vars: names
                .iter()
                .enumerate()
                .map(|(index, name)| BaseVar {
                    name: name.clone(),
                    index,
                })
                .collect(),
            names,
            sigmas,
            deltas,
            partial,
        })
    }

    /// Starts a textual description over the named generators.
    pub fn builder(names: &[&str]) -> BaseFieldBuilder {
        BaseFieldBuilder {
            names: names.iter().map(|s| s.to_string()).collect(),
            sigmas: Vec::new(),
            deltas: Vec::new(),
            partial: None,
        }
    }

    pub fn vars(&self) -> &[BaseVar] {
        &self.vars
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn sigmas(&self) -> &[OperatorSpec] {
        &self.sigmas
    }

    pub fn deltas(&self) -> &[OperatorSpec] {
        &self.deltas
    }

    pub fn partial(&self) -> &OperatorSpec {
        &self.partial
    }

    pub fn sigma(&self, id: &str) -> Option<&OperatorSpec> {
        self.sigmas.iter().find(|o| o.id() == id)
    }

    pub fn delta(&self, id: &str) -> Option<&OperatorSpec> {
        self.deltas.iter().find(|o| o.id() == id)
    }

    /// Σ, then Δ, then ∂.
    pub fn operators(&self) -> impl Iterator<Item = &OperatorSpec> {
        self.sigmas
            .iter()
            .chain(&self.deltas)
            .chain(std::iter::once(&self.partial))
    }

    pub fn parse(&self, text: &str) -> Result<RationalFunction, ParseError> {
        RationalFunction::parse(text, &self.names)
    }

    pub fn render(&self, f: &RationalFunction) -> String {
        f.render(&self.names)
    }

    /// Checks `μ(τ(v)) = τ(μ(v))` for every unordered operator pair and generator.
    pub fn check_commutation(&self) -> Result<CommutationReport, DomainError> {
        let ops: Vec<&OperatorSpec> = self.operators().collect();
        let mut report = CommutationReport::default();
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                report.pairs_checked += 1;
                let (mu, tau) = (ops[i], ops[j]);
                for (v, name) in self.names.iter().enumerate() {
                    let x = RationalFunction::var(v);
                    let lhs = mu.apply(&tau.apply(&x)?)?;
                    let rhs = tau.apply(&mu.apply(&x)?)?;
                    if lhs != rhs {
                        report.failures.push(CommutationFailure {
                            first: mu.id().to_string(),
                            second: tau.id().to_string(),
                            var: name.clone(),
                            first_second: lhs,
                            second_first: rhs,
                        });
                    }
                }
            }
        }
        Ok(report)
    }

    /// Whether `f` is a ΣΔ-constant.
    pub fn is_constant(&self, f: &RationalFunction) -> Result<bool, DomainError> {
        for op in self.sigmas.iter().chain(&self.deltas) {
            if !op.is_trivial_on(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Textual construction of a [`BaseField`]. Unlisted generators are fixed by
/// automorphisms and killed by derivations.
#[derive(Clone, Debug)]
pub struct BaseFieldBuilder {
    names: Vec<String>,
    sigmas: Vec<(String, Vec<(String, String)>, Vec<(String, String)>)>,
    deltas: Vec<(String, Vec<(String, String)>)>,
    partial: Option<(String, Vec<(String, String)>)>,
}

fn pairs(p: &[(&str, &str)]) -> Vec<(String, String)> {
    p.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

impl BaseFieldBuilder {
    pub fn sigma(mut self, id: &str, images: &[(&str, &str)], inverse: &[(&str, &str)]) -> Self {
        self.sigmas.push((id.into(), pairs(images), pairs(inverse)));
        self
    }

    pub fn delta(mut self, id: &str, images: &[(&str, &str)]) -> Self {
        self.deltas.push((id.into(), pairs(images)));
        self
    }

    pub fn partial(mut self, id: &str, images: &[(&str, &str)]) -> Self {
        self.partial = Some((id.into(), pairs(images)));
        self
    }

    /// `∂ = d/d(var)`.
    pub fn parameter(self, var: &str) -> Self {
        self.partial("partial", &[(var, "1")])
    }

    fn images(
        &self,
        given: &[(String, String)],
        default_identity: bool,
    ) -> Result<Vec<RationalFunction>, BaseFieldError> {
        let mut out: Vec<RationalFunction> = (0..self.names.len())
            .map(|v| {
                if default_identity {
                    RationalFunction::var(v)
                } else {
                    RationalFunction::zero()
                }
            })
            .collect();
        for (var, text) in given {
            let v = self
                .names
                .iter()
                .position(|n| n == var)
                .ok_or_else(|| BaseFieldError::UnknownVariable(var.clone()))?;
            out[v] = RationalFunction::parse(text, &self.names)?;
        }
        Ok(out)
    }

    pub fn build(self) -> Result<BaseField, BaseFieldError> {
        let mut sigmas = Vec::new();
        for (id, im, inv) in &self.sigmas {
            sigmas.push(OperatorSpec::automorphism(
                id.clone(),
                self.images(im, true)?,
                self.images(inv, true)?,
            ));
        }
        let mut deltas = Vec::new();
        for (id, im) in &self.deltas {
            deltas.push(OperatorSpec::derivation(id.clone(), self.images(im, false)?));
        }
        let (pid, pim) = self.partial.clone().ok_or(BaseFieldError::MissingParameter)?;
        let partial = OperatorSpec::parameter(pid, self.images(&pim, false)?);
        BaseField::new(self.names, sigmas, deltas, partial)
    }
}

#[cfg(test)]
mod tests;
