//! Dense matrices over an exact field.

use crate::polyring::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Field> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[C] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<D: Field, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<Matrix<D>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = C::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> C {
        (0..self.rows.min(self.cols)).fold(C::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> C {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return C::one();
        }
        let mut m = self.clone();
        let mut prev = C::one();
        let mut sign = false;
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = !sign;
                    }
                    None => return C::zero(),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = pivot
                        .mul(m.get(i, j))
                        .sub(&m.get(i, k).mul(m.get(k, j)))
                        .div(&prev);
                    m.set(i, j, v);
                }
                m.set(i, k, C::zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        if sign {
            d.neg()
        } else {
            d
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Inverse via Bareiss forward elimination on `[A | I]` and back substitution.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut m = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                C::one()
            } else {
                C::zero()
            }
        });
        let mut prev = C::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                let i = (k + 1..n).find(|&i| !m.get(i, k).is_zero())?;
                m.swap_rows(i, k);
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..2 * n {
                    let v = pivot
                        .mul(m.get(i, j))
                        .sub(&m.get(i, k).mul(m.get(k, j)))
                        .div(&prev);
                    m.set(i, j, v);
                }
                m.set(i, k, C::zero());
            }
            prev = pivot;
        }
        let mut inv = Self::zeros(n, n);
        for col in 0..n {
            for i in (0..n).rev() {
                let mut acc = m.get(i, n + col).clone();
                for j in i + 1..n {
                    acc = acc.sub(&m.get(i, j).mul(inv.get(j, col)));
                }
                inv.set(i, col, acc.div(m.get(i, i)));
            }
        }
        Some(inv)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv();
            for j in c..self.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..self.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : self · x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<C>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(row, f).neg();
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Rational;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
    }

    #[test]
    fn small_cases() {
        let a = q(&[&[0, 1], &[2, 3]]);
        assert_eq!(a.det(), Rational::from(-2));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(q(&[&[1, 2], &[2, 4]]).det(), Rational::from(0));
        let ns = q(&[&[1, 1, 0]]).nullspace();
        assert_eq!(ns.len(), 2);
    }

    proptest! {
        #[test]
        fn inverse_and_det_agree(entries in prop::collection::vec(-4i64..5, 9)) {
            let a = Matrix::from_fn(3, 3, |i, j| Rational::from(entries[3 * i + j]));
            let d = a.det();
            match a.inverse() {
                Some(inv) => {
                    prop_assert!(!d.is_zero());
                    prop_assert_eq!(a.mul(&inv), Matrix::identity(3));
                    prop_assert_eq!(inv.det().mul(&d), Rational::from(1));
                }
                None => prop_assert!(d.is_zero()),
            }
            for v in a.nullspace() {
                let col = Matrix::from_fn(3, 1, |i, _| v[i].clone());
                prop_assert!(a.mul(&col).is_zero());
            }
            prop_assert_eq!(a.rank() + a.nullspace().len(), 3);
        }
    }
}
