//! The filtered rings `S_d = K[X, ∂X, …, ∂^d X, 1/det X]` with the actions of
//! ∂, the automorphisms and the derivations induced by a linear system.

mod element;
mod ideal;
mod parse;

pub use element::FilteredElement;
pub use ideal::JetIdeal;

use crate::basefield::{BaseField, DomainError, RationalFunction};
use crate::expr::ParseError;
use crate::groebner::{Budget, GroebnerError};
use crate::linsys::{KMatrix, LinearSystem};
use crate::polyring::{Field, Monomial, Poly, PolyRing, TermOrder};
use std::fmt;

pub type JetPoly = Poly<RationalFunction>;

/// `∂^order X[row, col]`; `row` and `col` are 0-based here and printed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetVar {
    pub order: usize,
    pub row: usize,
    pub col: usize,
}

impl JetVar {
    pub fn new(order: usize, row: usize, col: usize) -> Self {
        JetVar { order, row, col }
    }

    /// Position in the variable list: `(order, row, col)` lexicographic.
    pub fn index(&self, n: usize) -> usize {
        self.order * n * n + self.row * n + self.col
    }

    pub fn from_index(idx: usize, n: usize) -> Self {
        JetVar {
            order: idx / (n * n),
            row: (idx % (n * n)) / n,
            col: idx % n,
        }
    }
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = (self.row + 1, self.col + 1);
        match self.order {
            0 => write!(f, "X[{i},{j}]"),
            1 => write!(f, "X'[{i},{j}]"),
            k => write!(f, "X^({k})[{i},{j}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JetError {
    #[error("unknown automorphism '{0}'")]
    UnknownSigma(String),
    #[error("unknown derivation '{0}'")]
    UnknownDelta(String),
    #[error("jet order {level} exceeds the cap D_max = {dmax}")]
    LevelCap { level: usize, dmax: usize },
    #[error("cannot embed an element of level {from} into level {to}")]
    Embed { from: usize, to: usize },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetOptions {
    pub dmax: usize,
    pub order: TermOrder,
    pub budget: Budget,
}

impl Default for JetOptions {
    fn default() -> Self {
        JetOptions {
            dmax: 6,
            order: TermOrder::Grevlex,
            budget: Budget::default(),
        }
    }
}

/// Operator tables for one linear system, precomputed up to `D_max`.
#[derive(Clone, Debug)]
pub struct JetRing {
    system: LinearSystem,
    n: usize,
    options: JetOptions,
    rings: Vec<PolyRing>,
    det: JetPoly,
    /// `∂(det X)`, a level-1 polynomial.
    det_derivative: JetPoly,
    sigma_images: Vec<Vec<JetPoly>>,
    sigma_inv_images: Vec<Vec<JetPoly>>,
    delta_images: Vec<Vec<JetPoly>>,
    sigma_det: Vec<RationalFunction>,
    sigma_inv_det: Vec<RationalFunction>,
    delta_trace: Vec<RationalFunction>,
}

/// `C(k, l)` for small arguments.
fn binomial(k: usize, l: usize) -> i64 {
    let mut r: i64 = 1;
    for i in 0..l {
        r = r * (k - i) as i64 / (i + 1) as i64;
    }
    r
}

impl JetRing {
    pub fn new(system: LinearSystem, options: JetOptions) -> Result<Self, JetError> {
        let n = system.n();
        let field = system.field().clone();
        let order = options.order.clone();
        let dmax = options.dmax;
        let nv = (dmax + 1) * n * n;
        let names: Vec<String> = (0..nv).map(|v| JetVar::from_index(v, n).to_string()).collect();
        let rings = (0..=dmax)
            .map(|d| {
                PolyRing::new(
                    names[..(d + 1) * n * n].to_vec(),
                    field.names().to_vec(),
                    order.clone(),
                )
                .expect("jet names are distinct")
            })
            .collect();
        let var = |v: usize| Poly::<RationalFunction>::var(v, order.clone());
        let det = det_of(n, &|i, j| var(JetVar::new(0, i, j).index(n)), &order);
        let mut ring = JetRing {
            system,
            n,
            options,
            rings,
            det: det.clone(),
            det_derivative: Poly::zero(order.clone()),
            sigma_images: Vec::new(),
            sigma_inv_images: Vec::new(),
            delta_images: Vec::new(),
            sigma_det: Vec::new(),
            sigma_inv_det: Vec::new(),
            delta_trace: Vec::new(),
        };
        ring.det_derivative = ring.d_poly(&det);
        for (i, op) in field.sigmas().iter().enumerate() {
            let a = &ring.system.a_matrices()[i];
            // σ⁻¹(X) = σ⁻¹(A⁻¹)·X
            let a_tilde = ring.system.a_inverses()[i].try_map(|e| op.apply_inverse(e))?;
            ring.sigma_images.push(ring.linear_images(a)?);
            ring.sigma_inv_images.push(ring.linear_images(&a_tilde)?);
            ring.sigma_det.push(a.det());
            ring.sigma_inv_det.push(a_tilde.det());
        }
        for b in ring.system.b_matrices().to_vec() {
            ring.delta_images.push(ring.linear_images(&b)?);
            ring.delta_trace.push(b.trace());
        }
        Ok(ring)
    }

    /// Images of every jet variable under `∂^k X ↦ ∂^k(M·X)`, expanded by Leibniz.
    fn linear_images(&self, m: &KMatrix) -> Result<Vec<JetPoly>, DomainError> {
        let n = self.n;
        let partial = self.field().partial();
        let mut derivs = vec![m.clone()];
        for l in 1..=self.options.dmax {
            let next = derivs[l - 1].try_map(|e| partial.apply(e))?;
            derivs.push(next);
        }
        let mut out = Vec::new();
        for v in 0..(self.options.dmax + 1) * n * n {
            let jv = JetVar::from_index(v, n);
            let k = jv.order;
            let mut terms = Vec::new();
            for l in 0..=k {
                let c = RationalFunction::from_int(binomial(k, l));
                for mm in 0..n {
                    let e = derivs[l].get(jv.row, mm);
                    if e.is_zero() {
                        continue;
                    }
                    let target = JetVar::new(k - l, mm, jv.col).index(n);
                    terms.push((Monomial::var(target), e.mul(&c)));
                }
            }
            out.push(Poly::from_terms(terms, self.options.order.clone()));
        }
        Ok(out)
    }

    pub fn system(&self) -> &LinearSystem {
        &self.system
    }

    pub fn field(&self) -> &BaseField {
        self.system.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dmax(&self) -> usize {
        self.options.dmax
    }

    pub fn options(&self) -> &JetOptions {
        &self.options
    }

    pub fn order(&self) -> &TermOrder {
        &self.options.order
    }

    pub fn budget(&self) -> &Budget {
        &self.options.budget
    }

    /// Number of jet variables at level `d`.
    pub fn nvars(&self, level: usize) -> usize {
        (level + 1) * self.n * self.n
    }

    /// The polynomial ring `K[X, …, ∂^d X]` of level `d`.
    pub fn ring(&self, level: usize) -> Result<&PolyRing, JetError> {
        self.rings.get(level).ok_or(JetError::LevelCap {
            level,
            dmax: self.options.dmax,
        })
    }

    fn check_level(&self, level: usize) -> Result<(), JetError> {
        if level > self.options.dmax {
            Err(JetError::LevelCap {
                level,
                dmax: self.options.dmax,
            })
        } else {
            Ok(())
        }
    }

    /// The order-0 determinant polynomial.
    pub fn det_poly(&self) -> &JetPoly {
        &self.det
    }

    pub fn var_poly(&self, v: JetVar) -> JetPoly {
        Poly::var(v.index(self.n), self.options.order.clone())
    }

    pub fn jet(&self, v: JetVar) -> Result<FilteredElement, JetError> {
        self.check_level(v.order)?;
        Ok(FilteredElement::from_poly(self.var_poly(v), v.order))
    }

    pub fn constant(&self, c: RationalFunction) -> FilteredElement {
        FilteredElement::from_poly(Poly::constant(c, self.options.order.clone()), 0)
    }

    pub fn zero(&self) -> FilteredElement {
        self.constant(RationalFunction::zero())
    }

    pub fn one(&self) -> FilteredElement {
        self.constant(RationalFunction::one())
    }

    /// `det(X)` as an element.
    pub fn det(&self) -> FilteredElement {
        FilteredElement::from_poly(self.det.clone(), 0)
    }

    /// `poly / det^det_power` in canonical form; the level is at least the
    /// highest jet order in `poly`.
    pub fn element(&self, poly: JetPoly, det_power: u32, level: usize) -> FilteredElement {
        let poly = poly.with_order(self.options.order.clone());
        let lvl = self.level_of(&poly).max(level);
        self.canonical(poly, det_power, lvl)
    }

    /// Highest jet order occurring in `p` (0 for constants).
    pub fn level_of(&self, p: &JetPoly) -> usize {
        p.max_var().map_or(0, |v| v / (self.n * self.n))
    }

    fn canonical(&self, mut poly: JetPoly, mut e: u32, level: usize) -> FilteredElement {
        if poly.is_zero() {
            e = 0;
        }
        while e > 0 {
            match poly.div_exact(&self.det) {
                Some(q) => {
                    poly = q;
                    e -= 1;
                }
                None => break,
            }
        }
        FilteredElement::raw(poly, e, level)
    }

    fn det_pow(&self, e: u32) -> JetPoly {
        self.det.pow(e)
    }

    pub fn add(&self, a: &FilteredElement, b: &FilteredElement) -> FilteredElement {
        let e = a.det_power().max(b.det_power());
        let pa = &a.poly().clone() * &self.det_pow(e - a.det_power());
        let pb = &b.poly().clone() * &self.det_pow(e - b.det_power());
        self.canonical(&pa + &pb, e, a.level().max(b.level()))
    }

    pub fn neg(&self, a: &FilteredElement) -> FilteredElement {
        FilteredElement::raw(-a.poly(), a.det_power(), a.level())
    }

    pub fn sub(&self, a: &FilteredElement, b: &FilteredElement) -> FilteredElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FilteredElement, b: &FilteredElement) -> FilteredElement {
        self.canonical(
            a.poly() * b.poly(),
            a.det_power() + b.det_power(),
            a.level().max(b.level()),
        )
    }

    pub fn scale(&self, a: &FilteredElement, c: &RationalFunction) -> FilteredElement {
        FilteredElement::raw(a.poly().scale(c), if c.is_zero() { 0 } else { a.det_power() }, a.level())
    }

    pub fn pow(&self, a: &FilteredElement, e: u32) -> FilteredElement {
        self.canonical(a.poly().pow(e), a.det_power() * e, a.level())
    }

    /// `det^-e` as an element.
    pub fn det_inverse_power(&self, e: u32) -> FilteredElement {
        FilteredElement::raw(Poly::one(self.options.order.clone()), e, 0)
    }

    /// Same element at a higher level.
    pub fn embed(&self, f: &FilteredElement, level: usize) -> Result<FilteredElement, JetError> {
        if level < f.level() {
            return Err(JetError::Embed {
                from: f.level(),
                to: level,
            });
        }
        self.check_level(level)?;
        Ok(FilteredElement::raw(f.poly().clone(), f.det_power(), level))
    }

    /// A derivation on polynomials: `coeff` acts on coefficients, `image(v)` is
    /// the image of variable `v`.
    fn derive(
        &self,
        p: &JetPoly,
        coeff: impl Fn(&RationalFunction) -> Result<RationalFunction, DomainError>,
        image: impl Fn(usize) -> JetPoly,
    ) -> Result<JetPoly, DomainError> {
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let dc = coeff(c)?;
            if !dc.is_zero() {
                terms.push((m.clone(), dc));
            }
        }
        let mut acc = Poly::from_terms(terms, self.options.order.clone());
        let mut vars: Vec<usize> = p.terms().iter().flat_map(|(m, _)| m.iter().map(|(v, _)| v)).collect();
        vars.sort_unstable();
        vars.dedup();
        for v in vars {
            let img = image(v);
            if img.is_zero() {
                continue;
            }
            acc = &acc + &(&p.derivative(v) * &img);
        }
        Ok(acc)
    }

    fn d_poly(&self, p: &JetPoly) -> JetPoly {
        let shift = self.n * self.n;
        let partial = self.field().partial().clone();
        self.derive(p, |c| partial.apply(c), |v| Poly::var(v + shift, self.options.order.clone()))
            .expect("derivations have no poles")
    }

    /// The total derivative `∂`, raising the level by one.
    pub fn d_apply(&self, f: &FilteredElement) -> Result<FilteredElement, JetError> {
        let level = f.level() + 1;
        self.check_level(level)?;
        let dp = self.d_poly(f.poly());
        let e = f.det_power();
        if e == 0 {
            return Ok(self.canonical(dp, 0, level));
        }
        // ∂(p/det^e) = (∂p·det − e·p·∂det) / det^(e+1)
        let num = &(&dp * &self.det)
            - &(f.poly() * &self.det_derivative).scale(&RationalFunction::from_int(e as i64));
        Ok(self.canonical(num, e + 1, level))
    }

    /// `∂^k f`.
    pub fn d_apply_n(&self, f: &FilteredElement, k: usize) -> Result<FilteredElement, JetError> {
        let mut g = f.clone();
        for _ in 0..k {
            g = self.d_apply(&g)?;
        }
        Ok(g)
    }

    fn sigma_index(&self, id: &str) -> Result<usize, JetError> {
        self.system
            .sigma_index(id)
            .ok_or_else(|| JetError::UnknownSigma(id.to_string()))
    }

    fn delta_index(&self, id: &str) -> Result<usize, JetError> {
        self.system
            .delta_index(id)
            .ok_or_else(|| JetError::UnknownDelta(id.to_string()))
    }

    fn substitute(
        &self,
        p: &JetPoly,
        coeff: impl Fn(&RationalFunction) -> Result<RationalFunction, DomainError>,
        images: &[JetPoly],
    ) -> Result<JetPoly, DomainError> {
        let order = self.options.order.clone();
        let mut coeffs = Vec::with_capacity(p.len());
        for (_, c) in p.terms() {
            coeffs.push(coeff(c)?);
        }
        let mapped = Poly::from_terms(
            p.terms().iter().zip(coeffs).map(|((m, _), c)| (m.clone(), c)),
            order.clone(),
        );
        Ok(mapped.eval_with(
            Poly::zero(order.clone()),
            Poly::one(order.clone()),
            |c| Poly::constant(c.clone(), order.clone()),
            |v| images[v].clone(),
            |a, b| a + b,
            |a, b| a * b,
        ))
    }

    /// The automorphism `σ` with `σ(X) = A·X`.
    pub fn sigma_apply(&self, id: &str, f: &FilteredElement) -> Result<FilteredElement, JetError> {
        let i = self.sigma_index(id)?;
        let op = &self.field().sigmas()[i];
        let p = self.substitute(f.poly(), |c| op.apply(c), &self.sigma_images[i])?;
        let e = f.det_power();
        let p = if e == 0 {
            p
        } else {
            p.scale(&self.sigma_det[i].pow(-(e as i64)))
        };
        Ok(self.canonical(p, e, f.level()))
    }

    /// The inverse automorphism, `σ⁻¹(X) = σ⁻¹(A⁻¹)·X`.
    pub fn sigma_inverse_apply(
        &self,
        id: &str,
        f: &FilteredElement,
    ) -> Result<FilteredElement, JetError> {
        let i = self.sigma_index(id)?;
        let op = &self.field().sigmas()[i];
        let p = self.substitute(f.poly(), |c| op.apply_inverse(c), &self.sigma_inv_images[i])?;
        let e = f.det_power();
        let p = if e == 0 {
            p
        } else {
            p.scale(&self.sigma_inv_det[i].pow(-(e as i64)))
        };
        Ok(self.canonical(p, e, f.level()))
    }

    /// The derivation `δ` with `δ(X) = B·X`.
    pub fn delta_apply(&self, id: &str, f: &FilteredElement) -> Result<FilteredElement, JetError> {
        let i = self.delta_index(id)?;
        let op = &self.field().deltas()[i];
        let images = &self.delta_images[i];
        let dp = self.derive(f.poly(), |c| op.apply(c), |v| images[v].clone())?;
        let e = f.det_power();
        let p = if e == 0 {
            dp
        } else {
            // δ(det) = tr(B)·det
            let t = self.delta_trace[i].mul(&RationalFunction::from_int(e as i64));
            &dp - &f.poly().scale(&t)
        };
        Ok(self.canonical(p, e, f.level()))
    }

    /// Applies the operator with the given id, whichever kind it is; `∂` is `"partial"`
    /// or the field's parameter id.
    pub fn apply(&self, id: &str, f: &FilteredElement) -> Result<FilteredElement, JetError> {
        if self.system.sigma_index(id).is_some() {
            self.sigma_apply(id, f)
        } else if self.system.delta_index(id).is_some() {
            self.delta_apply(id, f)
        } else if id == self.field().partial().id() {
            self.d_apply(f)
        } else {
            Err(JetError::UnknownDelta(id.to_string()))
        }
    }

    pub fn render(&self, f: &FilteredElement) -> String {
        let ring = &self.rings[f.level().min(self.options.dmax)];
        let body = ring.render(f.poly());
        match f.det_power() {
            0 => body,
            e => {
                let simple = f.poly().len() == 1 && {
                    let (_, c) = &f.poly().terms()[0];
                    let ct = Field::render(c, ring.coeff_names());
                    ct.atomic
                };
                let body = if simple { body } else { format!("({body})") };
                if e == 1 {
                    format!("{body}/det")
                } else {
                    format!("{body}/det^{e}")
                }
            }
        }
    }

    pub fn render_poly(&self, p: &JetPoly) -> String {
        self.rings[self.level_of(p).min(self.options.dmax)].render(p)
    }

    /// Parses jet syntax (`X[i,j]`, `X'[i,j]`, `X^(k)[i,j]`, `det`, base-field
    /// names). The level is the highest jet order that occurs.
    pub fn parse(&self, text: &str) -> Result<FilteredElement, ParseError> {
        parse::parse(self, text, crate::expr::Pos { line: 1, column: 1 })
    }

    pub fn parse_at(&self, text: &str, origin: crate::expr::Pos) -> Result<FilteredElement, ParseError> {
        parse::parse(self, text, origin)
    }
}

fn det_of(
    n: usize,
    entry: &dyn Fn(usize, usize) -> JetPoly,
    order: &TermOrder,
) -> JetPoly {
    // Laplace expansion along the first row; n is small.
    fn rec(rows: &[usize], cols: &[usize], entry: &dyn Fn(usize, usize) -> JetPoly, order: &TermOrder) -> JetPoly {
        if rows.is_empty() {
            return Poly::one(order.clone());
        }
        let r = rows[0];
        let mut acc = Poly::zero(order.clone());
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = rec(&rows[1..], &rest, entry, order);
            let term = &entry(r, c) * &minor;
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    rec(&idx, &idx, entry, order)
}
