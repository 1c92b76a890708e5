//! Multivariate GCD over ℚ: recursive content/primitive-part splitting with a
//! subresultant remainder sequence in the main variable.

use crate::polyring::{Field, Monomial, Poly, Rational};

type QPoly = Poly<Rational>;

/// Greatest common divisor, normalized to integer-primitive form with a positive
/// leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    normalize(&gcd_raw(a, b))
}

/// Integer-primitive rescaling with positive leading coefficient.
pub fn normalize(p: &QPoly) -> QPoly {
    p.primitive()
}

fn gcd_raw(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.order().clone());
    }
    if a.len() == 1 {
        return monomial_gcd(&a.terms()[0].0, b);
    }
    if b.len() == 1 {
        return monomial_gcd(&b.terms()[0].0, a);
    }
    if a.div_exact(b).is_some() {
        return b.clone();
    }
    if b.div_exact(a).is_some() {
        return a.clone();
    }
    let v = a.max_var().max(b.max_var()).expect("non-constant");
    let (a, b) = match (a.contains_var(v), b.contains_var(v)) {
        (true, true) => (a, b),
        (true, false) => return gcd_raw(&content(a, v), b),
        (false, true) => return gcd_raw(a, &content(b, v)),
        (false, false) => unreachable!(),
    };
    let ca = content(a, v);
    let cb = content(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd_raw(&ca, &cb);
    let g = subresultant(&pa, &pb, v);
    let g = if g.contains_var(v) {
        let cg = content(&g, v);
        g.div_exact(&cg).expect("content divides")
    } else {
        Poly::one(a.order().clone())
    };
    &c * &g
}

fn monomial_gcd(m: &Monomial, p: &QPoly) -> QPoly {
    let g = p.terms().iter().fold(m.clone(), |acc, (t, _)| acc.gcd(t));
    Poly::monomial(g, Rational::one(), p.order().clone())
}

/// Coefficients of `p` viewed as a polynomial in `v`, indexed by degree.
fn coeffs_in(p: &QPoly, v: usize) -> Vec<QPoly> {
    let deg = p.degree_in(v) as usize;
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        buckets[m.exponent(v) as usize].push((m.without_var(v), c.clone()));
    }
    buckets
        .into_iter()
        .map(|ts| Poly::from_terms(ts, p.order().clone()))
        .collect()
}

fn lead_coeff_in(p: &QPoly, v: usize) -> QPoly {
    let deg = p.degree_in(v);
    Poly::from_terms(
        p.terms()
            .iter()
            .filter(|(m, _)| m.exponent(v) == deg)
            .map(|(m, c)| (m.without_var(v), c.clone())),
        p.order().clone(),
    )
}

/// GCD of the coefficients of `p` in `v`.
fn content(p: &QPoly, v: usize) -> QPoly {
    let mut cs = coeffs_in(p, v);
    cs.retain(|c| !c.is_zero());
    cs.sort_by_key(|c| c.len());
    let mut g = Poly::zero(p.order().clone());
    for c in &cs {
        g = gcd_raw(&g, c);
        if g.is_constant() {
            return Poly::one(p.order().clone());
        }
    }
    normalize(&g)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b` in `v`.
fn prem(a: &QPoly, b: &QPoly, v: usize) -> QPoly {
    let db = b.degree_in(v);
    let lb = lead_coeff_in(b, v);
    let mut r = a.clone();
    let delta = a.degree_in(v) + 1 - db;
    let mut steps = 0;
    while !r.is_zero() && r.degree_in(v) >= db && r.contains_var(v) {
        let dr = r.degree_in(v);
        let lr = lead_coeff_in(&r, v);
        let shift = Poly::monomial(Monomial::var_pow(v, dr - db), Rational::one(), r.order().clone());
        r = &(&lb * &r) - &(&(&lr * &shift) * b);
        steps += 1;
    }
    if steps < delta {
        r = &r * &lb.pow(delta - steps);
    }
    r
}

/// Last nonzero element of the subresultant PRS of primitive `a`, `b` in `v`.
fn subresultant(a: &QPoly, b: &QPoly, v: usize) -> QPoly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let one = Poly::one(a.order().clone());
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = a.degree_in(v) - b.degree_in(v);
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        if !r.contains_var(v) {
            return one;
        }
        a = b;
        let divisor = &g * &h.pow(delta);
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = lead_coeff_in(&a, v);
        h = if delta == 0 {
            h
        } else if delta == 1 {
            g.clone()
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}
