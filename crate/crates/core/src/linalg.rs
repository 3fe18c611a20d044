//! Dense exact matrices over any [`Field`].
//!
//! Elimination uses the first nonzero pivot in each column; with exact
//! scalars no other pivoting strategy is needed.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{Field, Rat};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn diagonal(d: Vec<T>) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.into_iter().enumerate() {
            m[(i, i)] = x;
        }
        m
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

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    let cur = std::mem::replace(&mut out[(i, j)], T::zero());
                    out[(i, j)] = cur + prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// `uᵀ · self · v`.
    pub fn bilinear(&self, u: &[T], v: &[T]) -> Result<T> {
        if u.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                u.len(),
                self.rows
            )));
        }
        let mv = self.mul_vec(v)?;
        Ok(u.iter()
            .zip(mv)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b))
    }

    /// Exact `vᵀ · self · v`.
    pub fn quadratic_form(&self, v: &[T]) -> Result<T> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "quadratic form of a non-square matrix".into(),
            ));
        }
        self.bilinear(v, v)
    }

    /// Exact `x` with `self · x = b`.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} system with right-hand side of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let n = self.rows;
        let mut a: Vec<Vec<T>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap(col, p);
            rhs.swap(col, p);
            let piv = a[col][col].clone();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone() / piv.clone();
                for c in col..n {
                    let t = f.clone() * a[col][c].clone();
                    a[r][c] = a[r][c].clone() - t;
                }
                rhs[r] = rhs[r].clone() - f * rhs[col].clone();
            }
        }
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let s = (i + 1..n).fold(rhs[i].clone(), |acc, j| {
                acc - a[i][j].clone() * x[j].clone()
            });
            x[i] = s / a[i][i].clone();
        }
        Ok(x)
    }

    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a: Vec<Vec<T>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(T::zero());
            };
            if p != col {
                a.swap(col, p);
                det = -det;
            }
            let piv = a[col][col].clone();
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone() / piv.clone();
                for c in col..n {
                    let t = f.clone() * a[col][c].clone();
                    a[r][c] = a[r][c].clone() - t;
                }
            }
            det = det * piv;
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            cols.push(self.solve(&e)?);
        }
        let mut inv = Self::zeros(n, n);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                inv[(i, j)] = x;
            }
        }
        Ok(inv)
    }

    /// Top-left `k x k` block.
    pub fn leading_minor(&self, k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Principal submatrix on the given index set.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)].clone();
            }
        }
        m
    }
}

impl Matrix<Rat> {
    /// Leading-minor test: `(-1)^k det_k > 0` for every `k`.
    pub fn is_negative_definite(&self) -> Result<bool> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for k in 1..=self.rows {
            let d = self.leading_minor(k).determinant()?;
            let signed = if k % 2 == 0 { d } else { -d };
            if !signed.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Solve `a · x = b` over the rationals.
pub fn solve_linear(a: &Matrix<Rat>, b: &[Rat]) -> Result<Vec<Rat>> {
    a.solve(b)
}

pub fn is_negative_definite(a: &Matrix<Rat>) -> Result<bool> {
    a.is_negative_definite()
}

pub fn quadratic_form(a: &Matrix<Rat>, v: &[Rat]) -> Result<Rat> {
    a.quadratic_form(v)
}

/// Build a rational matrix from integer rows.
pub fn qmatrix(rows: &[&[i64]]) -> Matrix<Rat> {
    Matrix::from_rows(rows.iter().map(|r| crate::scalar::rats(r)).collect())
        .expect("rectangular integer rows")
}
