//! Prolongation ideals, consistency certificates, ΣΔ-closure and the level-by-level
//! construction of compatible ideal chains.

mod chain;
mod constants;
mod counterexample;
mod report;

pub use chain::{build_chain, ChainFailure, ChainLevel, ChainReport, Maximality};
pub use constants::{find_constants, ConstantsReport};
pub use counterexample::{counterexample_two_derivations, Counterexample};

use crate::basefield::{DomainError, RationalFunction};
use crate::groebner::{
    eliminate, rabinowitsch, unit_witness, GroebnerBasis, GroebnerError, IdealPresentation,
    Witness,
};
use crate::jetring::{FilteredElement, JetError, JetIdeal, JetPoly, JetRing, JetVar};
use crate::linsys::KMatrix;
use crate::polyring::{Field, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProlongError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("inconsistent evaluation: value of {var} is not the derivative of the value one order below")]
    InconsistentEvaluation { var: String },
    #[error("det(X) vanishes at the evaluation point")]
    SingularPoint,
    #[error("evaluation has {have} orders, level {level} needs {need}")]
    EvaluationTooShort { have: usize, level: usize, need: usize },
    #[error("the ideal is the unit ideal")]
    NotProper,
    #[error("the ideal is not stable: {op} sends {generator} to {image}, which is not in the ideal")]
    NotStable {
        op: String,
        generator: String,
        image: String,
    },
    #[error("unsupported: the quotient is infinite-dimensional over K (no finite staircase)")]
    InfiniteQuotient,
    #[error("budget exhausted: ΣΔ-closure did not stabilize within {iterations} rounds; last iterate: {last}")]
    ClosureBudget { iterations: usize, last: String },
}

/// A K-point of the jet space: `values[k]` is the matrix assigned to `∂^k X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetEvaluation {
    values: Vec<KMatrix>,
}

impl JetEvaluation {
    /// Checks `values[k+1] = ∂ values[k]` entrywise and `det values[0] ≠ 0`.
    pub fn new(ring: &JetRing, values: Vec<KMatrix>) -> Result<Self, ProlongError> {
        let partial = ring.field().partial();
        for k in 0..values.len().saturating_sub(1) {
            let d = values[k].try_map(|e| partial.apply(e))?;
            if let Some(pos) = (0..d.entries().len()).find(|&p| d.entries()[p] != values[k + 1].entries()[p]) {
                let n = ring.n();
                return Err(ProlongError::InconsistentEvaluation {
                    var: JetVar::new(k + 1, pos / n, pos % n).to_string(),
                });
            }
        }
        match values.first() {
            Some(v0) if !v0.det().is_zero() => Ok(JetEvaluation { values }),
            _ => Err(ProlongError::SingularPoint),
        }
    }

    /// The jets of the matrix `z` up to order `max_order`, using the field's `∂`.
    pub fn from_matrix(ring: &JetRing, z: KMatrix, max_order: usize) -> Result<Self, ProlongError> {
        let partial = ring.field().partial();
        let mut values = vec![z];
        for k in 0..max_order {
            let next = values[k].try_map(|e| partial.apply(e))?;
            values.push(next);
        }
        Self::new(ring, values)
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, v: JetVar) -> &RationalFunction {
        self.values[v.order].get(v.row, v.col)
    }

    /// Evaluates a jet polynomial at the point. Panics if `p` involves orders
    /// beyond the evaluation.
    pub fn eval(&self, ring: &JetRing, p: &JetPoly) -> RationalFunction {
        let n = ring.n();
        p.eval_with(
            RationalFunction::zero(),
            RationalFunction::one(),
            |c| c.clone(),
            |v| self.value(JetVar::from_index(v, n)).clone(),
            |a, b| a.add(b),
            |a, b| a.mul(b),
        )
    }
}

/// `{X^(k)_ij − value(i,j,k) : k ≤ level}`, saturated by det.
pub fn evaluation_kernel(
    ring: &JetRing,
    ev: &JetEvaluation,
    level: usize,
) -> Result<JetIdeal, ProlongError> {
    if ev.max_order() < level {
        return Err(ProlongError::EvaluationTooShort {
            have: ev.max_order() + 1,
            level,
            need: level + 1,
        });
    }
    let order = ring.order().clone();
    let gens: Vec<JetPoly> = (0..ring.nvars(level))
        .map(|v| {
            let jv = JetVar::from_index(v, ring.n());
            &ring.var_poly(jv) - &JetPoly::constant(ev.value(jv).clone(), order.clone())
        })
        .collect();
    Ok(ring.ideal_from_polys(level, gens)?)
}

/// The numerator of `∂g` for a polynomial `g`.
fn d_poly(ring: &JetRing, g: &JetPoly, level: usize) -> Result<JetPoly, JetError> {
    Ok(ring.d_apply(&FilteredElement::from_poly(g.clone(), level))?.poly().clone())
}

/// `b = (a, ∂a)` in level `d+1`, with labels `a_k` and `∂a_k`.
pub fn prolongation_ideal(
    ring: &JetRing,
    a: &JetIdeal,
) -> Result<(IdealPresentation<RationalFunction>, Vec<String>), ProlongError> {
    let d = a.level();
    let up = ring.ring(d + 1)?.clone();
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for (k, g) in a.generators().iter().enumerate() {
        gens.push(g.clone());
        labels.push(format!("a{}", k + 1));
    }
    for (k, g) in a.generators().iter().enumerate() {
        gens.push(d_poly(ring, g, d)?);
        labels.push(format!("∂a{}", k + 1));
    }
    let keep: Vec<bool> = gens.iter().map(|g| !g.is_zero()).collect();
    let labels = labels.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(l, _)| l).collect();
    Ok((IdealPresentation::new(up, gens), labels))
}

/// Variables of order ≤ `level` as indices.
pub(crate) fn vars_up_to(ring: &JetRing, level: usize) -> Vec<usize> {
    (0..ring.nvars(level)).collect()
}

/// Result of checking `∂(a ∩ K{X}_{d−1}) ⊂ a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCheck {
    pub passed: bool,
    /// Basis of `a'' = a ∩ K{X}_{d−1}` (empty at level 0).
    pub lower: Vec<JetPoly>,
    /// Elements `∂g` (g in `a''`) that are not in `a`.
    pub failures: Vec<JetPoly>,
}

pub fn check_closure(ring: &JetRing, a: &JetIdeal) -> Result<ClosureCheck, ProlongError> {
    let d = a.level();
    if d == 0 {
        return Ok(ClosureCheck {
            passed: true,
            lower: vec![],
            failures: vec![],
        });
    }
    let lower = eliminate(&a.to_presentation(), &vars_up_to(ring, d - 1), ring.budget())?;
    let mut failures = Vec::new();
    for g in lower.basis() {
        let dg = d_poly(ring, g, d - 1)?;
        if !a.contains_poly(&dg) {
            failures.push(dg);
        }
    }
    Ok(ClosureCheck {
        passed: failures.is_empty(),
        lower: lower.basis().to_vec(),
        failures,
    })
}

/// Certificate for `1 ∉ b` (or a witness for `1 ∈ b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyCertificate {
    /// Level of `a`; `b` lives one level up.
    pub level: usize,
    /// Whether `∂(a'') ⊂ a` held.
    pub hypothesis_ok: bool,
    pub generators: Vec<(String, JetPoly)>,
    /// Reduced basis of the det-saturation of `b`.
    pub basis_of_b: GroebnerBasis<RationalFunction>,
    pub trivial: bool,
    /// Present when trivial: `1` as a combination of the generators of `b`
    /// and `1 − w·det`, in the ring extended by `w`.
    pub witness: Option<(PolyRing, Witness<RationalFunction>)>,
}

pub fn check_consistency(ring: &JetRing, a: &JetIdeal) -> Result<ConsistencyCertificate, ProlongError> {
    let hypothesis_ok = check_closure(ring, a)?.passed;
    let (b, labels) = prolongation_ideal(ring, a)?;
    let sat = ring.ideal_from_polys(a.level() + 1, b.generators().to_vec())?;
    let trivial = sat.is_unit();
    let witness = if trivial {
        let ext = rabinowitsch(&b, ring.det_poly());
        let mut l = labels.clone();
        l.push("1 - w*det".into());
        unit_witness(&ext, &l, ring.budget())?.map(|w| (ext.ring().clone(), w))
    } else {
        None
    };
    Ok(ConsistencyCertificate {
        level: a.level(),
        hypothesis_ok,
        generators: labels.into_iter().zip(b.generators().iter().cloned()).collect(),
        basis_of_b: sat.basis().clone(),
        trivial,
        witness,
    })
}

/// Verifies `q' ∩ K{X}_d = q` and `∂(q) ⊂ q'`.
pub fn lemma1_certify(ring: &JetRing, q: &JetIdeal, q_prime: &JetIdeal) -> Result<bool, ProlongError> {
    let d = q.level();
    assert_eq!(q_prime.level(), d + 1, "q' must live one level above q");
    let lower = eliminate(&q_prime.to_presentation(), &vars_up_to(ring, d), ring.budget())?;
    if lower.basis() != q.generators() {
        return Ok(false);
    }
    for g in q.generators() {
        if !q_prime.contains_poly(&d_poly(ring, g, d)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The operator images used for ΣΔ-stability: `σ`, `σ⁻¹` and `δ` for each operator.
pub(crate) fn operator_images(
    ring: &JetRing,
    g: &JetPoly,
    level: usize,
) -> Result<Vec<(String, JetPoly)>, ProlongError> {
    let f = FilteredElement::from_poly(g.clone(), level);
    let mut out = Vec::new();
    for op in ring.field().sigmas() {
        out.push((op.id().to_string(), ring.sigma_apply(op.id(), &f)?.poly().clone()));
        out.push((format!("{}^-1", op.id()), ring.sigma_inverse_apply(op.id(), &f)?.poly().clone()));
    }
    for op in ring.field().deltas() {
        out.push((op.id().to_string(), ring.delta_apply(op.id(), &f)?.poly().clone()));
    }
    Ok(out)
}

/// The first operator image of a generator that falls outside the ideal.
pub(crate) fn stability_violation(
    ring: &JetRing,
    m: &JetIdeal,
) -> Result<Option<(String, JetPoly, JetPoly)>, ProlongError> {
    for g in m.generators() {
        for (op, img) in operator_images(ring, g, m.level())? {
            if !m.contains_poly(&img) {
                return Ok(Some((op, g.clone(), img)));
            }
        }
    }
    Ok(None)
}

/// Most rounds [`sigma_delta_close`] runs before giving up.
pub const MAX_CLOSURE_ROUNDS: usize = 64;

/// The smallest det-saturated ΣΔ-ideal of level `level` containing `gens`.
pub fn sigma_delta_close(
    ring: &JetRing,
    level: usize,
    gens: Vec<JetPoly>,
) -> Result<(JetIdeal, usize), ProlongError> {
    let mut current = ring.ideal_from_polys(level, gens)?;
    for round in 1..=MAX_CLOSURE_ROUNDS {
        if current.is_unit() {
            return Ok((current, round));
        }
        let mut extra = Vec::new();
        for g in current.generators() {
            for (_, img) in operator_images(ring, g, level)? {
                if !current.contains_poly(&img) {
                    extra.push(img);
                }
            }
        }
        if extra.is_empty() {
            return Ok((current, round));
        }
        let mut all = current.generators().to_vec();
        all.extend(extra);
        current = ring.ideal_from_polys(level, all)?;
    }
    Err(ProlongError::ClosureBudget {
        iterations: MAX_CLOSURE_ROUNDS,
        last: current.render().join("; "),
    })
}

#[cfg(test)]
mod tests;
