//! Gröbner bases and the ideal queries built on them: membership, triviality,
//! elimination, saturation and radical membership.

mod buchberger;
mod witness;

pub use buchberger::TraceEvent;
pub use witness::{Witness, WitnessError, WitnessRef, WitnessStep};

use crate::polyring::{Field, Monomial, Poly, PolyRing, TermOrder};
use buchberger::Run;

/// Caps that turn runaway computations into explicit failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_reductions: u64,
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_reductions: 100_000,
            max_degree: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("ring has no variables")]
    NoVariables,
}

/// Finitely many generators in a declared ring. Zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation<C> {
    ring: PolyRing,
    generators: Vec<Poly<C>>,
}

impl<C: Field> IdealPresentation<C> {
    pub fn new(ring: PolyRing, generators: Vec<Poly<C>>) -> Self {
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.with_order(ring.order().clone()))
            .collect();
        IdealPresentation { ring, generators }
    }

    /// Parses each generator in `ring`.
    pub fn parse(ring: PolyRing, gens: &[&str]) -> Result<Self, crate::expr::ParseError> {
        let polys = gens
            .iter()
            .map(|g| ring.parse(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(ring, polys))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<C>] {
        &self.generators
    }

    pub fn with_generator(&self, g: Poly<C>) -> Self {
        let mut gens = self.generators.clone();
        gens.push(g);
        Self::new(self.ring.clone(), gens)
    }

    /// The same ideal in a ring with a different term order.
    pub fn with_order(&self, order: TermOrder) -> Self {
        Self::new(self.ring.with_order(order), self.generators.clone())
    }

    pub fn render(&self) -> Vec<String> {
        self.generators.iter().map(|g| self.ring.render(g)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<C> {
    ring: PolyRing,
    basis: Vec<Poly<C>>,
    reduced: bool,
}

impl<C: Field> GroebnerBasis<C> {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Elements ascending by leading monomial.
    pub fn basis(&self) -> &[Poly<C>] {
        &self.basis
    }

    pub fn order(&self) -> &TermOrder {
        self.ring.order()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn normal_form(&self, f: &Poly<C>) -> Poly<C> {
        let mut rem = f.with_order(self.order().clone());
        let mut done: Vec<(Monomial, C)> = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            match self
                .basis
                .iter()
                .find(|g| g.leading_monomial().unwrap().divides(&m))
            {
                Some(g) => {
                    let (lm, lc) = g.leading_term().unwrap();
                    rem = rem.sub_scaled(&c.div(lc), &m.div(lm).unwrap(), g);
                }
                None => {
                    rem = &rem - &Poly::monomial(m.clone(), c.clone(), self.order().clone());
                    done.push((m, c));
                }
            }
        }
        Poly::from_terms(done, self.order().clone())
    }

    pub fn contains(&self, f: &Poly<C>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_all<'a>(&self, fs: impl IntoIterator<Item = &'a Poly<C>>) -> bool {
        fs.into_iter().all(|f| self.contains(f))
    }

    pub fn to_presentation(&self) -> IdealPresentation<C> {
        IdealPresentation::new(self.ring.clone(), self.basis.clone())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// Monomials outside the leading-term ideal, ascending; `None` if there are
    /// infinitely many (some variable has no pure power among the leading monomials).
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let lms = self.leading_monomials();
        if self.is_trivial() {
            return Some(Vec::new());
        }
        let n = self.ring.nvars();
        let mut caps = Vec::with_capacity(n);
        for v in 0..n {
            let cap = lms
                .iter()
                .filter(|m| m.iter().all(|(w, _)| w == v))
                .map(|m| m.exponent(v))
                .min()?;
            caps.push(cap);
        }
        let mut out = vec![Monomial::one()];
        for v in 0..n {
            let mut next = Vec::new();
            for m in &out {
                for e in 0..caps[v] {
                    let mm = m.mul(&Monomial::var_pow(v, e));
                    if !lms.iter().any(|l| l.divides(&mm)) {
                        next.push(mm);
                    }
                }
            }
            out = next;
        }
        out.sort_by(|a, b| self.order().cmp(a, b));
        Some(out)
    }

    pub fn render(&self) -> Vec<String> {
        self.basis.iter().map(|g| self.ring.render(g)).collect()
    }

    /// The same basis viewed in a ring with additional trailing variables. The
    /// order of `ring` must restrict to this basis' order on the old variables
    /// (true for lex and grevlex), so the basis stays reduced.
    pub fn embed(&self, ring: PolyRing) -> Self {
        assert!(ring.nvars() >= self.ring.nvars());
        assert_eq!(ring.names()[..self.ring.nvars()], *self.ring.names());
        assert_eq!(ring.order(), self.ring.order(), "embedding must keep the order");
        GroebnerBasis {
            ring,
            basis: self.basis.clone(),
            reduced: self.reduced,
        }
    }
}

fn check_ring<C: Field>(ideal: &IdealPresentation<C>) -> Result<(), GroebnerError> {
    if ideal.ring.nvars() == 0 {
        Err(GroebnerError::NoVariables)
    } else {
        Ok(())
    }
}

fn finish<C: Field>(ring: &PolyRing, run: &Run<C>) -> GroebnerBasis<C> {
    GroebnerBasis {
        ring: ring.clone(),
        basis: run.reduced_basis(),
        reduced: true,
    }
}

/// The reduced Gröbner basis of `ideal` under its ring's order.
pub fn groebner<C: Field>(
    ideal: &IdealPresentation<C>,
    budget: &Budget,
) -> Result<GroebnerBasis<C>, GroebnerError> {
    check_ring(ideal)?;
    let mut run = Run::new(ideal.ring.order().clone(), ideal.generators.len(), *budget, false, false);
    run.run(&ideal.generators)?;
    Ok(finish(&ideal.ring, &run))
}

/// As [`groebner`], also returning every processed S-pair.
pub fn groebner_traced<C: Field>(
    ideal: &IdealPresentation<C>,
    budget: &Budget,
) -> Result<(GroebnerBasis<C>, Vec<TraceEvent<C>>), GroebnerError> {
    check_ring(ideal)?;
    let mut run = Run::new(ideal.ring.order().clone(), ideal.generators.len(), *budget, false, true);
    run.run(&ideal.generators)?;
    let gb = finish(&ideal.ring, &run);
    Ok((gb, run.trace.take().unwrap_or_default()))
}

/// Renders one trace event as a single line.
pub fn render_trace<C: Field>(ring: &PolyRing, e: &TraceEvent<C>) -> String {
    let head = format!(
        "spair ({}, {}) lcm {}",
        e.first,
        e.second,
        ring.render_monomial(&e.lcm)
    );
    match &e.outcome {
        Some((k, p)) => format!("{head} -> g{k} = {}", ring.render(p)),
        None => format!("{head} -> 0"),
    }
}

/// If `1 ∈ ideal`, an explicit combination `1 = Σ c_g · g` of the generators.
pub fn unit_witness<C: Field>(
    ideal: &IdealPresentation<C>,
    labels: &[String],
    budget: &Budget,
) -> Result<Option<Witness<C>>, GroebnerError> {
    check_ring(ideal)?;
    let mut run = Run::new(ideal.ring.order().clone(), ideal.generators.len(), *budget, true, false);
    run.run(&ideal.generators)?;
    let Some(u) = run.unit else {
        return Ok(None);
    };
    let cofs = &run.cofactors.as_ref().unwrap()[u];
    let terms = cofs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(g, c)| (c.clone(), WitnessRef::Generator(g)))
        .collect();
    let generators = ideal
        .generators
        .iter()
        .enumerate()
        .map(|(g, p)| {
            let label = labels.get(g).cloned().unwrap_or_else(|| format!("g{}", g + 1));
            (label, p.clone())
        })
        .collect();
    Ok(Some(Witness {
        generators,
        steps: vec![WitnessStep {
            terms,
            result: run.polys[u].clone(),
        }],
    }))
}

/// Whether `f` lies in the ideal with basis `gb`.
pub fn member<C: Field>(f: &Poly<C>, gb: &GroebnerBasis<C>) -> bool {
    gb.contains(f)
}

/// `ideal ∩ K[keep]`, returned as its reduced basis in the ideal's own ring and order.
pub fn eliminate<C: Field>(
    ideal: &IdealPresentation<C>,
    keep: &[usize],
    budget: &Budget,
) -> Result<GroebnerBasis<C>, GroebnerError> {
    check_ring(ideal)?;
    let drop: Vec<usize> = (0..ideal.ring.nvars()).filter(|v| !keep.contains(v)).collect();
    if drop.is_empty() {
        return groebner(ideal, budget);
    }
    let block = TermOrder::block(vec![drop, keep.to_vec()]);
    let gb = groebner(&ideal.with_order(block), budget)?;
    let kept: Vec<Poly<C>> = gb
        .basis
        .iter()
        .filter(|g| g.uses_only(|v| keep.contains(&v)))
        .cloned()
        .collect();
    groebner(&IdealPresentation::new(ideal.ring.clone(), kept), budget)
}

/// A fresh auxiliary variable appended to `ring`, with an order eliminating it first.
fn with_aux(ring: &PolyRing) -> (PolyRing, usize) {
    let mut name = String::from("w_aux");
    while ring.index_of(&name).is_some() {
        name.push('_');
    }
    let w = ring.nvars();
    let order = TermOrder::block(vec![vec![w]]);
    (ring.extend(&[name], order).expect("fresh name"), w)
}

/// `ideal : f^∞`, as its reduced basis in the ideal's ring.
pub fn saturate<C: Field>(
    ideal: &IdealPresentation<C>,
    f: &Poly<C>,
    budget: &Budget,
) -> Result<GroebnerBasis<C>, GroebnerError> {
    check_ring(ideal)?;
    assert!(!f.is_zero(), "saturation by zero");
    let (ext, w) = with_aux(&ideal.ring);
    let mut gens: Vec<Poly<C>> = ideal.generators.iter().map(|g| g.with_order(ext.order().clone())).collect();
    gens.push(aux_relation(&ext, w, f));
    let gb = groebner(&IdealPresentation::new(ext, gens), budget)?;
    let kept: Vec<Poly<C>> = gb
        .basis
        .iter()
        .filter(|g| !g.contains_var(w))
        .map(|g| g.with_order(ideal.ring.order().clone()))
        .collect();
    groebner(&IdealPresentation::new(ideal.ring.clone(), kept), budget)
}

/// `1 - w·f` in the extended ring.
pub(crate) fn aux_relation<C: Field>(ext: &PolyRing, w: usize, f: &Poly<C>) -> Poly<C> {
    let f = f.with_order(ext.order().clone());
    &ext.one() - &(&ext.var(w) * &f)
}

/// Extends `ideal` by `1 - w·f` for a fresh variable `w` (the Rabinowitsch trick).
pub fn rabinowitsch<C: Field>(ideal: &IdealPresentation<C>, f: &Poly<C>) -> IdealPresentation<C> {
    let (ext, w) = with_aux(&ideal.ring);
    let mut gens: Vec<Poly<C>> = ideal.generators.iter().map(|g| g.with_order(ext.order().clone())).collect();
    gens.push(aux_relation(&ext, w, f));
    IdealPresentation::new(ext, gens)
}

/// Whether `f ∈ √ideal`.
pub fn radical_member<C: Field>(
    f: &Poly<C>,
    ideal: &IdealPresentation<C>,
    budget: &Budget,
) -> Result<bool, GroebnerError> {
    check_ring(ideal)?;
    if f.is_zero() {
        return Ok(true);
    }
    let ext = rabinowitsch(ideal, f);
    let ext = ext.with_order(TermOrder::Grevlex);
    Ok(groebner(&ext, budget)?.is_trivial())
}
