//! Linear systems `σ_i(Y) = A_i Y`, `δ_j(Y) = B_j Y` over the base field and
//! their integrability conditions.

mod matrix;

pub use matrix::Matrix;

use crate::basefield::{BaseField, DomainError, OperatorSpec, RationalFunction};
use crate::jetring::{FilteredElement, JetError, JetIdeal, JetRing};
use std::fmt;

pub type KMatrix = Matrix<RationalFunction>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("matrix for '{id}' must be {n}x{n}")]
    Shape { id: String, n: usize },
    #[error("A must be invertible (matrix for '{0}' has zero determinant)")]
    Singular(String),
    #[error("no automorphism '{0}' in the field description")]
    UnknownSigma(String),
    #[error("no derivation '{0}' in the field description")]
    UnknownDelta(String),
    #[error("missing matrix for operator '{0}'")]
    Missing(String),
    #[error("duplicate matrix for operator '{0}'")]
    Duplicate(String),
    #[error("matrix size must be at least 1")]
    EmptySize,
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// The data `(n, A_i, B_j)` of a ΣΔ-linear system over a base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    field: BaseField,
    n: usize,
    a: Vec<KMatrix>,
    a_inv: Vec<KMatrix>,
    b: Vec<KMatrix>,
}

impl LinearSystem {
    /// Matrices are keyed by operator id; each automorphism and each derivation of
    /// `field` needs exactly one.
    pub fn new(
        field: BaseField,
        n: usize,
        a: Vec<(String, KMatrix)>,
        b: Vec<(String, KMatrix)>,
    ) -> Result<Self, SystemError> {
        if n == 0 {
            return Err(SystemError::EmptySize);
        }
        let pick = |given: &[(String, KMatrix)],
                    ops: &[OperatorSpec],
                    unknown: fn(String) -> SystemError|
         -> Result<Vec<KMatrix>, SystemError> {
            for (k, (id, m)) in given.iter().enumerate() {
                if !ops.iter().any(|o| o.id() == id) {
                    return Err(unknown(id.clone()));
                }
                if given[..k].iter().any(|(other, _)| other == id) {
                    return Err(SystemError::Duplicate(id.clone()));
                }
                if m.rows() != n || m.cols() != n {
                    return Err(SystemError::Shape { id: id.clone(), n });
                }
            }
            ops.iter()
                .map(|o| {
                    given
                        .iter()
                        .find(|(id, _)| id == o.id())
                        .map(|(_, m)| m.clone())
                        .ok_or_else(|| SystemError::Missing(o.id().to_string()))
                })
                .collect()
        };
        let a = pick(&a, field.sigmas(), SystemError::UnknownSigma)?;
        let b = pick(&b, field.deltas(), SystemError::UnknownDelta)?;
        let mut a_inv = Vec::with_capacity(a.len());
        for (m, op) in a.iter().zip(field.sigmas()) {
            let inv = m
                .inverse()
                .ok_or_else(|| SystemError::Singular(op.id().to_string()))?;
            debug_assert_eq!(m.mul(&inv), Matrix::identity(n));
            a_inv.push(inv);
        }
        Ok(LinearSystem {
            field,
            n,
            a,
            a_inv,
            b,
        })
    }

    /// Builds from textual matrices (rows of rational-function strings).
    pub fn parse(
        field: BaseField,
        n: usize,
        a: &[(&str, &[&[&str]])],
        b: &[(&str, &[&[&str]])],
    ) -> Result<Self, SystemParseError> {
        let conv = |list: &[(&str, &[&[&str]])]| -> Result<Vec<(String, KMatrix)>, SystemParseError> {
            list.iter()
                .map(|(id, rows)| {
                    let rows = rows
                        .iter()
                        .map(|r| r.iter().map(|e| field.parse(e)).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()?;
                    if rows.iter().any(|r| r.len() != rows.len()) {
                        return Err(SystemParseError::System(SystemError::Shape {
                            id: id.to_string(),
                            n,
                        }));
                    }
                    Ok((id.to_string(), Matrix::from_rows(rows)))
                })
                .collect()
        };
        let a = conv(a)?;
        let b = conv(b)?;
        Ok(Self::new(field, n, a, b)?)
    }

    pub fn field(&self) -> &BaseField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `A_i` in the order of the field's automorphisms.
    pub fn a_matrices(&self) -> &[KMatrix] {
        &self.a
    }

    pub fn a_inverses(&self) -> &[KMatrix] {
        &self.a_inv
    }

    pub fn b_matrices(&self) -> &[KMatrix] {
        &self.b
    }

    pub fn sigma_index(&self, id: &str) -> Option<usize> {
        self.field.sigmas().iter().position(|o| o.id() == id)
    }

    pub fn delta_index(&self, id: &str) -> Option<usize> {
        self.field.deltas().iter().position(|o| o.id() == id)
    }

    pub fn a(&self, id: &str) -> Option<&KMatrix> {
        self.sigma_index(id).map(|i| &self.a[i])
    }

    pub fn b(&self, id: &str) -> Option<&KMatrix> {
        self.delta_index(id).map(|i| &self.b[i])
    }

    pub fn render_matrix(&self, m: &KMatrix) -> String {
        let rows: Vec<String> = (0..m.rows())
            .map(|i| {
                let entries: Vec<String> = m.row(i).iter().map(|e| self.field.render(e)).collect();
                format!("[{}]", entries.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    /// Checks the integrability conditions for every applicable operator pair.
    pub fn check_integrability(&self) -> Result<IntegrabilityReport, DomainError> {
        let sig = self.field.sigmas();
        let del = self.field.deltas();
        let apply = |op: &OperatorSpec, m: &KMatrix| m.try_map(|e| op.apply(e));
        let mut checks = Vec::new();
        for i in 0..sig.len() {
            for j in i + 1..sig.len() {
                let lhs = apply(&sig[i], &self.a[j])?.mul(&self.a[i]);
                let rhs = apply(&sig[j], &self.a[i])?.mul(&self.a[j]);
                checks.push(IntegrabilityCheck::new(
                    Condition::SigmaSigma,
                    &sig[i],
                    &sig[j],
                    rhs.sub(&lhs),
                ));
            }
        }
        for (i, s) in sig.iter().enumerate() {
            for (j, d) in del.iter().enumerate() {
                let lhs = apply(s, &self.b[j])?.mul(&self.a[i]);
                let rhs = apply(d, &self.a[i])?.add(&self.a[i].mul(&self.b[j]));
                checks.push(IntegrabilityCheck::new(Condition::SigmaDelta, s, d, rhs.sub(&lhs)));
            }
        }
        for i in 0..del.len() {
            for j in i + 1..del.len() {
                let lhs = apply(&del[i], &self.b[j])?.add(&self.b[j].mul(&self.b[i]));
                let rhs = apply(&del[j], &self.b[i])?.add(&self.b[i].mul(&self.b[j]));
                checks.push(IntegrabilityCheck::new(
                    Condition::DeltaDelta,
                    &del[i],
                    &del[j],
                    rhs.sub(&lhs),
                ));
            }
        }
        // The literal shape σ_i(A_j) = σ_j(A_i)·A_j, reported when it holds while the
        // commutation identity fails.
        let mut literal_only = Vec::new();
        for i in 0..sig.len() {
            for j in 0..sig.len() {
                if i == j {
                    continue;
                }
                let lhs = apply(&sig[i], &self.a[j])?;
                let rhs = apply(&sig[j], &self.a[i])?.mul(&self.a[j]);
                let (lo, hi) = (i.min(j), i.max(j));
                let corrected_fails = checks.iter().any(|c| {
                    c.condition == Condition::SigmaSigma
                        && c.first == sig[lo].id()
                        && c.second == sig[hi].id()
                        && !c.passed
                });
                if lhs == rhs && corrected_fails {
                    literal_only.push((sig[i].id().to_string(), sig[j].id().to_string()));
                }
            }
        }
        Ok(IntegrabilityReport {
            checks,
            literal_only,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemParseError {
    #[error("{0}")]
    Parse(#[from] crate::expr::ParseError),
    #[error(transparent)]
    System(#[from] SystemError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `σ_i(A_j)·A_i = σ_j(A_i)·A_j`
    SigmaSigma,
    /// `σ_i(B_j)·A_i = δ_j(A_i) + A_i·B_j`
    SigmaDelta,
    /// `δ_i(B_j) + B_j·B_i = δ_j(B_i) + B_i·B_j`
    DeltaDelta,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::SigmaSigma => "SS",
            Condition::SigmaDelta => "SD",
            Condition::DeltaDelta => "DD",
        })
    }
}

/// One condition for one operator pair; `residual` is right side minus left side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityCheck {
    pub condition: Condition,
    pub first: String,
    pub second: String,
    pub passed: bool,
    pub residual: KMatrix,
}

impl IntegrabilityCheck {
    fn new(condition: Condition, a: &OperatorSpec, b: &OperatorSpec, residual: KMatrix) -> Self {
        IntegrabilityCheck {
            condition,
            first: a.id().to_string(),
            second: b.id().to_string(),
            passed: residual.is_zero(),
            residual,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegrabilityReport {
    pub checks: Vec<IntegrabilityCheck>,
    /// Ordered pairs `(σ_i, σ_j)` satisfying `σ_i(A_j) = σ_j(A_i)·A_j` although
    /// the commutation identity fails for them.
    pub literal_only: Vec<(String, String)>,
}

impl IntegrabilityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IntegrabilityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FundamentalError {
    #[error("det(Z) is not invertible modulo the ideal")]
    NotInvertible,
    #[error("Z must be {0}x{0}")]
    Shape(usize),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Whether `Z` is a fundamental matrix of the system in `S_d / ideal`: entries
/// are first replaced by their normal forms, then `σ_i(Z) − A_i·Z` and
/// `δ_j(Z) − B_j·Z` must vanish modulo the ideal.
pub fn verify_fundamental_matrix(
    ring: &JetRing,
    z: &[Vec<FilteredElement>],
    ideal: &JetIdeal,
) -> Result<bool, FundamentalError> {
    let n = ring.n();
    if z.len() != n || z.iter().any(|r| r.len() != n) {
        return Err(FundamentalError::Shape(n));
    }
    let level = ideal.level();
    let zr: Vec<Vec<FilteredElement>> = z
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| ring.embed(&ring.normal_form(ideal, e), level.max(e.level())))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let det = det_elements(ring, &zr);
    let mut gens = ideal.generators().to_vec();
    gens.push(det.poly().clone());
    if !ring.ideal_from_polys(level.max(det.level()), gens)?.is_unit() {
        return Err(FundamentalError::NotInvertible);
    }
    let times = |m: &KMatrix, i: usize, j: usize| {
        (0..n).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.scale(&zr[k][j], m.get(i, k))))
    };
    let sys = ring.system();
    let field = sys.field();
    for (op, a) in field.sigmas().iter().zip(sys.a_matrices()) {
        for i in 0..n {
            for j in 0..n {
                let lhs = ring.sigma_apply(op.id(), &zr[i][j])?;
                if !ideal.contains(&ring.sub(&lhs, &times(a, i, j))) {
                    return Ok(false);
                }
            }
        }
    }
    for (op, b) in field.deltas().iter().zip(sys.b_matrices()) {
        for i in 0..n {
            for j in 0..n {
                let lhs = ring.delta_apply(op.id(), &zr[i][j])?;
                if !ideal.contains(&ring.sub(&lhs, &times(b, i, j))) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Determinant of a matrix of jet elements by Laplace expansion.
pub fn det_elements(ring: &JetRing, m: &[Vec<FilteredElement>]) -> FilteredElement {
    fn rec(ring: &JetRing, m: &[Vec<FilteredElement>], row: usize, cols: &[usize]) -> FilteredElement {
        if cols.is_empty() {
            return ring.one();
        }
        let mut acc = ring.zero();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = ring.mul(&m[row][c], &rec(ring, m, row + 1, &rest));
            acc = if k % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        acc
    }
    let cols: Vec<usize> = (0..m.len()).collect();
    rec(ring, m, 0, &cols)
}
