use std::collections::BTreeMap;

use super::{stability_violation, ProlongError};
use crate::basefield::{gcd, RationalFunction};
use crate::jetring::{FilteredElement, JetIdeal, JetPoly, JetRing};
use crate::linsys::Matrix;
use crate::polyring::{Field, Monomial, Poly, Rational, TermOrder};

/// ΣΔ-constants of `S_d/m` found in a bounded ansatz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantsReport {
    pub level: usize,
    /// Residue basis of the quotient, as standard monomials.
    pub staircase: Vec<JetPoly>,
    pub unknowns: usize,
    pub equations: usize,
    /// A ℚ-basis of the constants in the ansatz, with a flag telling whether the
    /// constant involves jet variables (so it lies outside K).
    pub constants: Vec<(JetPoly, bool)>,
}

impl ConstantsReport {
    pub fn new_constants(&self) -> impl Iterator<Item = &JetPoly> {
        self.constants.iter().filter(|c| c.1).map(|c| &c.0)
    }
}

/// Exponent vectors over `nvars` variables with total degree ≤ `bound`.
fn exponents(nvars: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for k in 0..=bound - used {
                let mut f = e.clone();
                f.push(k);
                next.push(f);
            }
        }
        out = next;
    }
    out
}

fn lcm(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    let g = gcd(a, b);
    (a * b).div_exact(&g).expect("gcd divides the product")
}

/// Searches for residue classes `r = Σ_s c_s·s` (s in the staircase of `m`) with
/// `σ(r) = r` for every σ and `δ(r) = 0` for every δ, where each `c_s` ranges over
/// `q·v^α/den` with `|α| ≤ degree_bound`, `den` in `denominators` and `q ∈ ℚ`.
///
/// Requires `m` proper, ΣΔ-stable and of finite codimension.
pub fn find_constants(
    ring: &JetRing,
    m: &JetIdeal,
    degree_bound: u32,
    denominators: &[RationalFunction],
) -> Result<ConstantsReport, ProlongError> {
    if m.is_unit() {
        return Err(ProlongError::NotProper);
    }
    if let Some((op, g, img)) = stability_violation(ring, m)? {
        return Err(ProlongError::NotStable {
            op,
            generator: ring.render_poly(&g),
            image: ring.render_poly(&img),
        });
    }
    let staircase = m.basis().standard_monomials().ok_or(ProlongError::InfiniteQuotient)?;
    let order = ring.order().clone();
    let level = m.level();
    let one = [RationalFunction::one()];
    let dens = if denominators.is_empty() { &one[..] } else { denominators };

    let mut unknowns: Vec<JetPoly> = Vec::new();
    for s in &staircase {
        for e in exponents(ring.field().nvars(), degree_bound) {
            let va = Poly::monomial(Monomial::from_dense(&e), Rational::one(), TermOrder::Grevlex);
            for den in dens {
                let c = RationalFunction::from_poly(va.clone()).div(den);
                unknowns.push(JetPoly::monomial(s.clone(), c, order.clone()));
            }
        }
    }

    // For each unknown, the residue of every condition, keyed by (operator, staircase monomial).
    let mut columns: Vec<BTreeMap<(usize, usize), RationalFunction>> = Vec::new();
    let stair_pos = |mono: &Monomial| staircase.iter().position(|s| s == mono);
    for u in &unknowns {
        let f = FilteredElement::from_poly(u.clone(), level);
        let mut residues = Vec::new();
        for op in ring.field().sigmas() {
            let img = ring.sigma_apply(op.id(), &f)?;
            residues.push(&m.basis().normal_form(img.poly()) - u);
        }
        for op in ring.field().deltas() {
            residues.push(m.basis().normal_form(ring.delta_apply(op.id(), &f)?.poly()));
        }
        let mut col = BTreeMap::new();
        for (k, r) in residues.iter().enumerate() {
            for (mono, c) in r.terms() {
                let s = stair_pos(mono).expect("normal forms live on the staircase");
                col.insert((k, s), c.clone());
            }
        }
        columns.push(col);
    }

    // Clear denominators per condition and split into ℚ-linear equations.
    let keys: std::collections::BTreeSet<(usize, usize)> =
        columns.iter().flat_map(|c| c.keys().copied()).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for key in keys {
        let mut l = Poly::one(TermOrder::Grevlex);
        for col in &columns {
            if let Some(c) = col.get(&key) {
                l = lcm(&l, c.denom());
            }
        }
        let mut by_mono: BTreeMap<Vec<u32>, Vec<Rational>> = BTreeMap::new();
        let nvars = ring.field().nvars();
        for (j, col) in columns.iter().enumerate() {
            let Some(c) = col.get(&key) else { continue };
            let scaled = c.numer() * &(&l).div_exact(c.denom()).expect("lcm is a multiple");
            for (mono, q) in scaled.terms() {
                let dense: Vec<u32> = (0..nvars).map(|v| mono.exponent(v)).collect();
                let row = by_mono.entry(dense).or_insert_with(|| vec![Rational::zero(); columns.len()]);
                row[j] = row[j].add(q);
            }
        }
        rows.extend(by_mono.into_values());
    }
    let equations = rows.len();
    let kernel = if rows.is_empty() {
        (0..unknowns.len())
            .map(|j| (0..unknowns.len()).map(|i| Rational::from_int((i == j) as i64)).collect())
            .collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };

    let constants = kernel
        .into_iter()
        .map(|v| {
            let mut r = JetPoly::zero(order.clone());
            for (q, u) in v.iter().zip(&unknowns) {
                if !q.is_zero() {
                    r = &r + &u.scale(&RationalFunction::from_rational(q.clone()));
                }
            }
            let outside = !r.is_constant();
            (r, outside)
        })
        .collect();
    Ok(ConstantsReport {
        level,
        staircase: staircase
            .into_iter()
            .map(|s| JetPoly::monomial(s, RationalFunction::one(), order.clone()))
            .collect(),
        unknowns: unknowns.len(),
        equations,
        constants,
    })
}
