//! Text and key=value renderings of prolongation results.

use super::chain::{ChainLevel, FailureKind, Maximality};
use super::{ChainReport, ConsistencyCertificate, ConstantsReport, Counterexample};
use crate::jetring::JetRing;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(b: Option<bool>) -> &'static str {
    match b {
        None => "n/a",
        Some(true) => "ok",
        Some(false) => "FAILED",
    }
}

impl Maximality {
    fn text(&self) -> String {
        match self {
            Maximality::Certified => "certified".into(),
            Maximality::NotAttempted => "not-attempted (infinite quotient)".into(),
            Maximality::NotMaximal(s) => format!("not maximal ({s} generates a proper ΣΔ-ideal)"),
        }
    }

    fn key(&self) -> &'static str {
        match self {
            Maximality::Certified => "certified",
            Maximality::NotAttempted => "not-attempted",
            Maximality::NotMaximal(_) => "not_maximal",
        }
    }
}

impl FailureKind {
    pub fn key(&self) -> &'static str {
        match self {
            FailureKind::InconsistentSeed => "inconsistent_seed",
            FailureKind::SeedConflict => "seed_conflict",
            FailureKind::TrivialProlongation => "trivial_prolongation",
        }
    }
}

impl ConsistencyCertificate {
    pub fn render_text(&self, ring: &JetRing) -> String {
        let mut out = vec![
            format!("level: {}", self.level),
            if self.level == 0 {
                format!("hypothesis: {} (vacuous at level 0)", yes_no(self.hypothesis_ok))
            } else {
                format!("hypothesis ∂(a ∩ S_{}) ⊂ a: {}", self.level - 1, yes_no(self.hypothesis_ok))
            },
            "b generators:".into(),
        ];
        for (label, g) in &self.generators {
            out.push(format!("  {label} = {}", ring.render_poly(g)));
        }
        out.push("basis of b (saturated by det):".into());
        for g in self.basis_of_b.basis() {
            out.push(format!("  {}", ring.render_poly(g)));
        }
        out.push(format!("trivial: {}", yes_no(self.trivial)));
        if let Some((r, w)) = &self.witness {
            out.push("witness:".into());
            out.extend(w.render(r).into_iter().map(|l| format!("  {l}")));
        }
        out.push(if self.trivial { "1 ∈ b" } else { "1 ∉ b" }.into());
        out.join("\n")
    }

    pub fn render_machine(&self, ring: &JetRing) -> String {
        let mut out = vec![
            format!("level={}", self.level),
            format!("hypothesis_ok={}", self.hypothesis_ok),
            format!("generators={}", self.generators.len()),
        ];
        for (k, (label, g)) in self.generators.iter().enumerate() {
            out.push(format!("generator.{}={label}: {}", k + 1, ring.render_poly(g)));
        }
        out.push(format!("basis={}", self.basis_of_b.basis().len()));
        for (k, g) in self.basis_of_b.basis().iter().enumerate() {
            out.push(format!("basis.{}={}", k + 1, ring.render_poly(g)));
        }
        out.push(format!("trivial={}", self.trivial));
        if let Some((r, w)) = &self.witness {
            for (k, l) in w.render(r).into_iter().enumerate() {
                out.push(format!("witness.{}={l}", k + 1));
            }
            out.push(format!("witness_ok={}", w.proves_unit()));
        }
        out.join("\n")
    }
}

impl ChainLevel {
    fn render_text(&self, ring: &JetRing, out: &mut Vec<String>) {
        out.push(format!("level {}{}", self.level, if self.seeded { " (seeded)" } else { "" }));
        if let Some(c) = &self.consistency {
            out.push(format!(
                "  prolongation of level {}: {}",
                c.level,
                if c.trivial { "1 ∈ b" } else { "1 ∉ b" }
            ));
        }
        let basis = self.ideal.generators();
        if basis.is_empty() {
            out.push("  basis: (0)".into());
        } else {
            out.push("  basis:".into());
            out.extend(basis.iter().map(|g| format!("    {}", ring.render_poly(g))));
        }
        out.push(format!("  elimination: {}", check(self.elimination_ok)));
        out.push(format!("  partial: {}", check(self.partial_ok)));
        out.push(format!("  saturation: {}", check(Some(self.saturation_ok))));
        out.push(format!("  sigma-delta closed: {}", check(Some(self.closed_ok))));
        out.push(format!("  maximality: {}", self.maximality.text()));
    }

    fn render_machine(&self, ring: &JetRing, out: &mut Vec<String>) {
        let p = format!("level.{}", self.level);
        out.push(format!("{p}.seeded={}", self.seeded));
        out.push(format!("{p}.basis={}", self.ideal.generators().len()));
        for (k, g) in self.ideal.generators().iter().enumerate() {
            out.push(format!("{p}.basis.{}={}", k + 1, ring.render_poly(g)));
        }
        if let Some(c) = &self.consistency {
            out.push(format!("{p}.prolongation_trivial={}", c.trivial));
        }
        let opt = |b: Option<bool>| b.map_or("na".to_string(), |b| b.to_string());
        out.push(format!("{p}.elimination_ok={}", opt(self.elimination_ok)));
        out.push(format!("{p}.partial_ok={}", opt(self.partial_ok)));
        out.push(format!("{p}.saturation_ok={}", self.saturation_ok));
        out.push(format!("{p}.closed_ok={}", self.closed_ok));
        out.push(format!("{p}.maximality={}", self.maximality.key()));
    }
}

impl ChainReport {
    pub fn render_text(&self, ring: &JetRing) -> String {
        let mut out = vec![format!("chain of depth {} for n = {}", self.depth, self.n)];
        for l in &self.levels {
            l.render_text(ring, &mut out);
        }
        if let Some(f) = &self.failure {
            out.push(format!("failure at level {}: {}", f.level, f.message));
            out.extend(f.witness.iter().map(|l| format!("  {l}")));
        }
        out.push(format!("result: {}", if self.passed() { "all checks passed" } else { "FAILED" }));
        out.join("\n")
    }

    pub fn render_machine(&self, ring: &JetRing) -> String {
        let mut out = vec![format!("depth={}", self.depth), format!("n={}", self.n)];
        for l in &self.levels {
            l.render_machine(ring, &mut out);
        }
        if let Some(f) = &self.failure {
            out.push(format!("failure.level={}", f.level));
            out.push(format!("failure.kind={}", f.kind.key()));
            for (k, l) in f.witness.iter().enumerate() {
                out.push(format!("failure.witness.{}={l}", k + 1));
            }
        }
        out.push(format!("status={}", if self.passed() { "pass" } else { "fail" }));
        out.join("\n")
    }
}

impl ConstantsReport {
    pub fn render_text(&self, ring: &JetRing) -> String {
        let stair: Vec<String> = self.staircase.iter().map(|s| ring.render_poly(s)).collect();
        let mut out = vec![
            format!("level: {}", self.level),
            format!("residue basis: {}", stair.join(", ")),
            format!("ansatz: {} unknowns, {} equations", self.unknowns, self.equations),
            format!("constants: {}", self.constants.len()),
        ];
        for (c, outside) in &self.constants {
            let tag = if *outside { "  [new]" } else { "" };
            out.push(format!("  {}{tag}", ring.render_poly(c)));
        }
        out.join("\n")
    }

    pub fn render_machine(&self, ring: &JetRing) -> String {
        let mut out = vec![
            format!("level={}", self.level),
            format!("unknowns={}", self.unknowns),
            format!("equations={}", self.equations),
            format!("constants={}", self.constants.len()),
        ];
        for (k, (c, outside)) in self.constants.iter().enumerate() {
            out.push(format!("constant.{}={}", k + 1, ring.render_poly(c)));
            out.push(format!("constant.{}.new={outside}", k + 1));
        }
        out.join("\n")
    }
}

impl Counterexample {
    pub fn render_text(&self) -> String {
        let r = &self.ring;
        let mut out = vec!["K = Q(u,v), ∂1 = d/du, ∂2 = d/dv".to_string(), "a:".into()];
        out.extend(self.a.iter().map(|(l, g)| format!("  {l} = {}", r.render(g))));
        out.push("a ∩ K[x] = (0)".into());
        for (op, ok) in &self.closure {
            out.push(format!("closure under {op}: {}", yes_no(*ok)));
        }
        out.push("single derivation ∂1, basis of (a, ∂1 a):".into());
        out.extend(self.slice_basis.render().into_iter().map(|l| format!("  {l}")));
        out.push(format!("  contains 1: {}", yes_no(self.slice_basis.is_trivial())));
        let point: Vec<String> = r
            .names()
            .iter()
            .zip(&self.slice_point)
            .map(|(n, v)| format!("{n} = {}", v.render(r.coeff_names())))
            .collect();
        out.push(format!("  zero: {}", point.join(", ")));
        out.push(format!("  zero verified: {}", yes_no(self.slice_point_ok())));
        out.push("both derivations, b = (a, ∂1 a, ∂2 a):".into());
        out.extend(self.witness.render(r).into_iter().map(|l| format!("  {l}")));
        out.push(format!("  witness replays to 1: {}", yes_no(self.witness.proves_unit())));
        out.push(format!("  reduced basis of b: {}", self.basis_of_b.render().join(", ")));
        out.push(format!("trivial: {}", yes_no(self.trivial())));
        out.push(if self.trivial() { "1 ∈ b" } else { "1 ∉ b" }.into());
        out.join("\n")
    }

    pub fn render_machine(&self) -> String {
        let mut out = Vec::new();
        for (op, ok) in &self.closure {
            out.push(format!("closure.{op}={ok}"));
        }
        out.push(format!("slice_trivial={}", self.slice_basis.is_trivial()));
        out.push(format!("slice_point_ok={}", self.slice_point_ok()));
        for (k, l) in self.witness.render(&self.ring).into_iter().enumerate() {
            out.push(format!("witness.{}={l}", k + 1));
        }
        out.push(format!("witness_ok={}", self.witness.proves_unit()));
        out.push(format!("trivial={}", self.trivial()));
        out.join("\n")
    }
}
