use std::cmp::Ordering;

/// A power product with sparse exponents, stored as `(variable, exponent)`
/// pairs sorted by variable index. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: usize) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: usize, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Monomial {
            exps: vec![(v as u32, e)],
        }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut v: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|p| p.1 > 0)
            .map(|(a, e)| (a as u32, e))
            .collect();
        v.sort_unstable();
        let mut exps: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match exps.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => exps.push((var, e)),
            }
        }
        Monomial { exps }
    }

    pub fn from_dense(exps: &[u32]) -> Self {
        Self::from_pairs(exps.iter().enumerate().map(|(i, e)| (i, *e)))
    }

    pub(crate) fn raw(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|p| p.1).sum()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        match self.exps.binary_search_by_key(&(v as u32), |p| p.0) {
            Ok(i) => self.exps[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|p| p.0 as usize)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let b = &other.exps;
        let mut j = 0;
        for &(v, e) in &self.exps {
            while j < b.len() && b[j].0 < v {
                j += 1;
            }
            if j == b.len() || b[j].0 != v || b[j].1 < e {
                return false;
            }
        }
        true
    }

    /// `self / other`, if exact.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            let sub = if j < other.exps.len() && other.exps[j].0 == v {
                j += 1;
                other.exps[j - 1].1
            } else {
                0
            };
            if e > sub {
                out.push((v, e - sub));
            }
        }
        Some(Monomial { exps: out })
    }

    fn combine(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, ea, eb) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, a[i - 1].1, 0)
            } else if i == a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, 0, b[j - 1].1)
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, a[i - 1].1, b[j - 1].1)
            };
            let e = f(ea, eb);
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial { exps: out }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.combine(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.combine(other, u32::min)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    /// Drops the given variable (sets its exponent to zero).
    pub fn without_var(&self, v: usize) -> Monomial {
        Monomial {
            exps: self.exps.iter().copied().filter(|p| p.0 as usize != v).collect(),
        }
    }

    pub fn vars_all(&self, pred: impl Fn(usize) -> bool) -> bool {
        self.exps.iter().all(|p| pred(p.0 as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Monomial::from_dense(&[2, 1]);
        let b = Monomial::from_dense(&[1, 3]);
        assert_eq!(a.mul(&b), Monomial::from_dense(&[3, 4]));
        assert_eq!(a.lcm(&b), Monomial::from_dense(&[2, 3]));
        assert_eq!(a.gcd(&b), Monomial::from_dense(&[1, 1]));
        assert!(Monomial::from_dense(&[1, 1]).divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.div(&Monomial::var(0)), Some(Monomial::from_dense(&[1, 1])));
        assert_eq!(a.div(&b), None);
        assert_eq!(a.degree(), 3);
        assert!(Monomial::var(0).is_coprime(&Monomial::var(1)));
        assert_eq!(Monomial::from_pairs([(1, 2), (0, 1), (1, 1), (3, 0)]).raw(), &[(0, 1), (1, 3)]);
    }
}
