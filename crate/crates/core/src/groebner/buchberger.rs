//! Buchberger's algorithm with Gebauer–Möller pair elimination and normal
//! pair selection, optionally tracking cofactors with respect to the input.

use super::{Budget, GroebnerError};
use crate::polyring::{Field, Monomial, Poly, TermOrder};
use std::collections::BTreeSet;

/// One S-pair processed by the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent<C> {
    pub first: usize,
    pub second: usize,
    pub lcm: Monomial,
    /// Index and value of the new basis element, or `None` if the S-polynomial reduced to 0.
    pub outcome: Option<(usize, Poly<C>)>,
}

pub(crate) struct Run<C> {
    pub polys: Vec<Poly<C>>,
    pub active: Vec<bool>,
    /// `cofactors[k][g]`: multiplier of input generator `g` in `polys[k]`.
    pub cofactors: Option<Vec<Vec<Poly<C>>>>,
    pub trace: Option<Vec<TraceEvent<C>>>,
    /// Set when a nonzero constant was found; index into `polys`.
    pub unit: Option<usize>,
    pairs: BTreeSet<(u32, usize, usize)>,
    order: TermOrder,
    ngens: usize,
    budget: Budget,
    reductions: u64,
}

/// Stored elements are kept primitive over ℚ and monic elsewhere.
fn normalize_scale<C: Field>(p: &Poly<C>) -> C {
    let coeffs: Vec<&C> = p.terms().iter().map(|t| &t.1).collect();
    match C::primitive_scale(&coeffs) {
        Some(s) => s,
        None => p.leading_coeff().map_or(C::one(), |c| c.inv()),
    }
}

impl<C: Field> Run<C> {
    pub fn new(order: TermOrder, ngens: usize, budget: Budget, track: bool, trace: bool) -> Self {
        Run {
            polys: Vec::new(),
            active: Vec::new(),
            cofactors: track.then(Vec::new),
            trace: trace.then(Vec::new),
            unit: None,
            pairs: BTreeSet::new(),
            order,
            ngens,
            budget,
            reductions: 0,
        }
    }

    fn zero(&self) -> Poly<C> {
        Poly::zero(self.order.clone())
    }

    /// Runs to completion on the given generators.
    pub fn run(&mut self, gens: &[Poly<C>]) -> Result<(), GroebnerError> {
        for (g, p) in gens.iter().enumerate() {
            let cof = self.cofactors.as_ref().map(|_| {
                let mut v = vec![self.zero(); self.ngens];
                v[g] = Poly::one(self.order.clone());
                v
            });
            self.insert_reduced(p.clone(), cof)?;
            if self.unit.is_some() {
                return Ok(());
            }
        }
        while let Some(&(deg, i, j)) = self.pairs.iter().next() {
            self.pairs.remove(&(deg, i, j));
            self.reductions += 1;
            if self.reductions > self.budget.max_reductions {
                return Err(GroebnerError::BudgetExhausted(format!(
                    "more than {} S-pair reductions",
                    self.budget.max_reductions
                )));
            }
            let (s, cof) = self.s_poly(i, j);
            let lcm = self.polys[i]
                .leading_monomial()
                .unwrap()
                .lcm(self.polys[j].leading_monomial().unwrap());
            let before = self.polys.len();
            self.insert_reduced(s, cof)?;
            if let Some(t) = self.trace.as_mut() {
                let outcome = (self.polys.len() > before)
                    .then(|| (before, self.polys[before].clone()));
                t.push(TraceEvent {
                    first: i,
                    second: j,
                    lcm,
                    outcome,
                });
            }
            if self.unit.is_some() {
                return Ok(());
            }
        }
        Ok(())
    }

    fn s_poly(&self, i: usize, j: usize) -> (Poly<C>, Option<Vec<Poly<C>>>) {
        let (mi, ci) = self.polys[i].leading_term().unwrap();
        let (mj, cj) = self.polys[j].leading_term().unwrap();
        let l = mi.lcm(mj);
        let ui = l.div(mi).unwrap();
        let uj = l.div(mj).unwrap();
        let ai = ci.inv();
        let aj = cj.inv();
        let s = self.polys[i]
            .mul_term(&ui, &ai)
            .sub_scaled(&aj, &uj, &self.polys[j]);
        let cof = self.cofactors.as_ref().map(|cs| {
            cs[i]
                .iter()
                .zip(&cs[j])
                .map(|(a, b)| a.mul_term(&ui, &ai).sub_scaled(&aj, &uj, b))
                .collect()
        });
        (s, cof)
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        (0..self.polys.len()).find(|&k| {
            self.active[k] && self.polys[k].leading_monomial().unwrap().divides(m)
        })
    }

    /// Fully reduces `p` modulo the active set, carrying cofactors along.
    pub fn reduce(
        &self,
        p: Poly<C>,
        mut cof: Option<Vec<Poly<C>>>,
    ) -> (Poly<C>, Option<Vec<Poly<C>>>) {
        let mut rem = p;
        let mut done: Vec<(Monomial, C)> = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            match self.find_reducer(&m) {
                Some(k) => {
                    let (lm, lc) = self.polys[k].leading_term().unwrap();
                    let q = m.div(lm).unwrap();
                    let qc = c.div(lc);
                    rem = rem.sub_scaled(&qc, &q, &self.polys[k]);
                    if let (Some(cv), Some(cs)) = (cof.as_mut(), self.cofactors.as_ref()) {
                        for (a, b) in cv.iter_mut().zip(&cs[k]) {
                            *a = a.sub_scaled(&qc, &q, b);
                        }
                    }
                }
                None => {
                    let lead = Poly::monomial(m.clone(), c.clone(), self.order.clone());
                    rem = &rem - &lead;
                    done.push((m, c));
                }
            }
        }
        (Poly::from_terms(done, self.order.clone()), cof)
    }

    fn insert_reduced(
        &mut self,
        p: Poly<C>,
        cof: Option<Vec<Poly<C>>>,
    ) -> Result<(), GroebnerError> {
        let (h, cof) = self.reduce(p, cof);
        if h.is_zero() {
            return Ok(());
        }
        if h.total_degree() > self.budget.max_degree {
            return Err(GroebnerError::BudgetExhausted(format!(
                "basis element of degree {} exceeds the cap {}",
                h.total_degree(),
                self.budget.max_degree
            )));
        }
        let s = normalize_scale(&h);
        let h = h.scale(&s);
        let cof = cof.map(|v| v.iter().map(|c| c.scale(&s)).collect());
        self.update(h, cof);
        Ok(())
    }

    /// Gebauer–Möller update with the new element `h`.
    fn update(&mut self, h: Poly<C>, cof: Option<Vec<Poly<C>>>) {
        let idx = self.polys.len();
        let lh = h.leading_monomial().unwrap().clone();
        if lh.is_one() {
            self.unit = Some(idx);
        }
        self.polys.push(h);
        self.active.push(true);
        if let (Some(cs), Some(c)) = (self.cofactors.as_mut(), cof) {
            cs.push(c);
        }
        if self.unit.is_some() {
            return;
        }
        let lm = |k: usize, s: &Self| s.polys[k].leading_monomial().unwrap().clone();
        let candidates: Vec<(usize, Monomial, bool)> = (0..idx)
            .filter(|&k| self.active[k])
            .map(|k| {
                let g = lm(k, self);
                (k, g.lcm(&lh), g.is_coprime(&lh))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (pos, (k, l, coprime)) in candidates.iter().enumerate() {
            let dominated = |q: &(usize, Monomial, bool)| q.1.divides(l);
            let keep = *coprime
                || (!candidates[pos + 1..].iter().any(dominated) && !kept.iter().any(dominated));
            if keep {
                kept.push((*k, l.clone(), *coprime));
            }
        }
        let old: Vec<(u32, usize, usize)> = self.pairs.iter().cloned().collect();
        for p @ (_, i, j) in old {
            let lij = lm(i, self).lcm(&lm(j, self));
            if lh.divides(&lij)
                && lm(i, self).lcm(&lh) != lij
                && lm(j, self).lcm(&lh) != lij
            {
                self.pairs.remove(&p);
            }
        }
        for (k, l, coprime) in kept {
            if !coprime {
                self.pairs.insert((l.degree(), k, idx));
            }
        }
        for k in 0..idx {
            if self.active[k] && lh.divides(&lm(k, self)) {
                self.active[k] = false;
            }
        }
    }

    /// Indices of the minimal active set, ascending by leading monomial.
    pub fn minimal(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.polys.len()).filter(|&k| self.active[k]).collect();
        idx.sort_by(|&a, &b| {
            self.order.cmp(
                self.polys[a].leading_monomial().unwrap(),
                self.polys[b].leading_monomial().unwrap(),
            )
        });
        idx
    }

    /// Tail-reduces the minimal set and makes every element monic.
    pub fn reduced_basis(&self) -> Vec<Poly<C>> {
        if self.unit.is_some() {
            return vec![Poly::one(self.order.clone())];
        }
        let idx = self.minimal();
        let mut out = Vec::with_capacity(idx.len());
        for &k in &idx {
            let p = &self.polys[k];
            let (lm, lc) = p.leading_term().unwrap().clone();
            let tail = &p.clone() - &Poly::monomial(lm.clone(), lc.clone(), self.order.clone());
            let (tail, _) = self.reduce(tail, None);
            let full = &Poly::monomial(lm, lc, self.order.clone()) + &tail;
            out.push(full.monic());
        }
        out
    }
}
