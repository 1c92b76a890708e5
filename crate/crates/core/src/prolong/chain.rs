use std::collections::BTreeMap;

use super::{
    check_consistency, sigma_delta_close, stability_violation, vars_up_to,
    ConsistencyCertificate, ProlongError,
};
use crate::groebner::{eliminate, rabinowitsch, unit_witness};
use crate::jetring::{JetIdeal, JetPoly, JetRing};

/// Outcome of the maximality check for one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Maximality {
    /// Finite quotient, and the ΣΔ-closure of every residue-basis element
    /// together with the ideal is the unit ideal.
    Certified,
    /// The quotient is infinite-dimensional; nothing was checked.
    NotAttempted,
    /// This residue-basis element generates a proper ΣΔ-ideal over the level ideal.
    NotMaximal(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLevel {
    pub level: usize,
    pub ideal: JetIdeal,
    pub seeded: bool,
    /// The certificate for `b = (m_{d−1}, ∂m_{d−1})`; absent at level 0.
    pub consistency: Option<ConsistencyCertificate>,
    /// `m_d ∩ S_{d−1} = m_{d−1}`; absent at level 0.
    pub elimination_ok: Option<bool>,
    /// `∂(m_{d−1}) ⊂ m_d`; absent at level 0.
    pub partial_ok: Option<bool>,
    pub saturation_ok: bool,
    pub closed_ok: bool,
    pub maximality: Maximality,
}

impl ChainLevel {
    pub fn passed(&self) -> bool {
        self.elimination_ok != Some(false)
            && self.partial_ok != Some(false)
            && self.saturation_ok
            && self.closed_ok
            && self.consistency.as_ref().is_none_or(|c| !c.trivial)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// A seed together with what is forced from below generates the unit ideal.
    InconsistentSeed,
    /// A seed forces new relations at a lower level.
    SeedConflict,
    /// `1 ∈ b`.
    TrivialProlongation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFailure {
    pub level: usize,
    pub kind: FailureKind,
    pub message: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub depth: usize,
    pub n: usize,
    pub levels: Vec<ChainLevel>,
    pub failure: Option<ChainFailure>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.levels.iter().all(ChainLevel::passed)
    }
}

/// Builds `m_0 ⊂ m_1 ⊂ … ⊂ m_depth`.
///
/// `m_0` is the ΣΔ-closure of the level-0 seed (or of nothing). Each `m_{d+1}` is the
/// ΣΔ-closure of the det-saturated prolongation of `m_d` plus the level-`d+1` seed.
pub fn build_chain(
    ring: &JetRing,
    seeds: &BTreeMap<usize, Vec<JetPoly>>,
    depth: usize,
) -> Result<ChainReport, ProlongError> {
    ring.ring(depth)?;
    let mut report = ChainReport {
        depth,
        n: ring.n(),
        levels: Vec::new(),
        failure: None,
    };
    let seed0 = seeds.get(&0).cloned().unwrap_or_default();
    let (m0, _) = sigma_delta_close(ring, 0, seed0.clone())?;
    if m0.is_unit() {
        report.failure = Some(inconsistent_seed(ring, 0, Vec::new(), &seed0)?);
        return Ok(report);
    }
    report.levels.push(level_checks(ring, m0, None, !seed0.is_empty(), None)?);

    for d in 0..depth {
        let prev = &report.levels[d].ideal;
        let cert = check_consistency(ring, prev)?;
        if cert.trivial {
            let witness = match &cert.witness {
                Some((r, w)) => w.render(r),
                None => Vec::new(),
            };
            report.failure = Some(ChainFailure {
                level: d + 1,
                kind: FailureKind::TrivialProlongation,
                message: "1 lies in the prolongation of the previous level".into(),
                witness,
            });
            return Ok(report);
        }
        let forced = cert.basis_of_b.basis().to_vec();
        let seed = seeds.get(&(d + 1)).cloned().unwrap_or_default();
        let mut gens = forced.clone();
        gens.extend(seed.iter().cloned());
        let (m, _) = sigma_delta_close(ring, d + 1, gens)?;
        if m.is_unit() {
            report.failure = Some(inconsistent_seed(ring, d + 1, forced, &seed)?);
            return Ok(report);
        }
        let prev = prev.clone();
        let level = level_checks(ring, m, Some(&prev), !seed.is_empty(), Some(cert))?;
        if level.elimination_ok == Some(false) {
            let lower = eliminate(&level.ideal.to_presentation(), &vars_up_to(ring, d), ring.budget())?;
            let extra: Vec<String> = lower
                .basis()
                .iter()
                .filter(|g| !prev.contains_poly(g))
                .map(|g| ring.render_poly(g))
                .collect();
            report.failure = Some(ChainFailure {
                level: d + 1,
                kind: FailureKind::SeedConflict,
                message: format!("level {} forces new relations at level {d}", d + 1),
                witness: extra,
            });
            report.levels.push(level);
            return Ok(report);
        }
        report.levels.push(level);
    }
    Ok(report)
}

fn inconsistent_seed(
    ring: &JetRing,
    level: usize,
    forced: Vec<JetPoly>,
    seed: &[JetPoly],
) -> Result<ChainFailure, ProlongError> {
    let mut labels: Vec<String> = (1..=forced.len()).map(|k| format!("b{k}")).collect();
    labels.extend((1..=seed.len()).map(|k| format!("seed{k}")));
    let mut gens = forced;
    gens.extend(seed.iter().cloned());
    labels.push("1 - w_aux*det".into());
    let pres = crate::groebner::IdealPresentation::new(ring.ring(level)?.clone(), gens);
    let ext = rabinowitsch(&pres, ring.det_poly());
    let witness = unit_witness(&ext, &labels, ring.budget())?
        .map(|w| w.render(ext.ring()))
        .unwrap_or_default();
    Ok(ChainFailure {
        level,
        kind: FailureKind::InconsistentSeed,
        message: format!("the seed at level {level} generates the unit ideal after ΣΔ-closure"),
        witness,
    })
}

fn level_checks(
    ring: &JetRing,
    m: JetIdeal,
    prev: Option<&JetIdeal>,
    seeded: bool,
    consistency: Option<ConsistencyCertificate>,
) -> Result<ChainLevel, ProlongError> {
    let d = m.level();
    let (elimination_ok, partial_ok) = match prev {
        None => (None, None),
        Some(p) => {
            let lower = eliminate(&m.to_presentation(), &vars_up_to(ring, d - 1), ring.budget())?;
            let down = lower.basis().iter().all(|g| p.contains_poly(g));
            let up = p.generators().iter().all(|g| m.contains_poly(g));
            let mut partial = true;
            for g in p.generators() {
                let dg = ring.d_apply(&crate::jetring::FilteredElement::from_poly(g.clone(), d - 1))?;
                partial &= m.contains_poly(dg.poly());
            }
            (Some(down && up), Some(partial))
        }
    };
    let saturation_ok = ring.is_saturated(&m)?;
    let closed_ok = stability_violation(ring, &m)?.is_none();
    let maximality = maximality(ring, &m)?;
    Ok(ChainLevel {
        level: d,
        ideal: m,
        seeded,
        consistency,
        elimination_ok,
        partial_ok,
        saturation_ok,
        closed_ok,
        maximality,
    })
}

fn maximality(ring: &JetRing, m: &JetIdeal) -> Result<Maximality, ProlongError> {
    let Some(staircase) = m.basis().standard_monomials() else {
        return Ok(Maximality::NotAttempted);
    };
    let r = ring.ring(m.level())?;
    for s in staircase {
        if s.is_one() {
            continue;
        }
        let sp = JetPoly::monomial(s.clone(), crate::polyring::Field::one(), ring.order().clone());
        let mut gens = m.generators().to_vec();
        gens.push(sp);
        let (closed, _) = sigma_delta_close(ring, m.level(), gens)?;
        if !closed.is_unit() {
            return Ok(Maximality::NotMaximal(r.render_monomial(&s)));
        }
    }
    Ok(Maximality::Certified)
}
