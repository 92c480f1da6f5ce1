//! Small dense vectors and matrices over an abstract scalar field.
//!
//! Everything here is dimension-generic but sized for the 3- and 6-dimensional
//! algebras this crate works with, so the implementations favor clarity over
//! asymptotics: plain Gaussian elimination with partial pivoting (which is
//! exact pivot selection for rationals), cofactor-free determinants via
//! elimination, and the recursive Pfaffian expansion.

use std::ops::{Index, IndexMut};

use crate::error::GeomError;
use crate::scalar::Scalar;

/// A coordinate vector in the declared basis `{E_1, ..., E_n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S>(Vec<S>);

impl<S: Scalar> Vector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Vector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Vector(vec![S::zero(); dim])
    }

    /// The basis vector `E_{i+1}` (0-based index `i`).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v[i] = S::one();
        v
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> S) -> Self {
        Vector((0..dim).map(f).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Vector::from_fn(self.dim(), |i| self.0[i].clone() + other.0[i].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Vector::from_fn(self.dim(), |i| self.0[i].clone() - other.0[i].clone())
    }

    pub fn neg(&self) -> Self {
        Vector::from_fn(self.dim(), |i| -self.0[i].clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Vector::from_fn(self.dim(), |i| self.0[i].clone() * c.clone())
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, c: &S, other: &Self) {
        assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a = a.clone() + c.clone() * b.clone();
        }
    }

    /// Max-norm of the coordinates.
    pub fn max_abs(&self) -> S {
        let mut m = S::zero();
        for c in &self.0 {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Vector<T> {
        Vector(self.0.iter().map(f).collect())
    }
}

impl<S> Index<usize> for Vector<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S> IndexMut<usize> for Vector<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.0[i]
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(diag: &[S]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i].clone() } else { S::zero() })
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vector<S> {
        Vector::from_fn(self.rows, |i| self[(i, j)].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * c.clone())
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * other[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &Vector<S>) -> Vector<S> {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        Vector::from_fn(self.rows, |i| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * v[k].clone();
            }
            acc
        })
    }

    /// Matrix commutator `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul_mat(other).sub(&other.mul_mat(self))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn max_abs(&self) -> S {
        let mut m = S::zero();
        for c in &self.data {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    pub fn trace(&self) -> S {
        assert!(self.is_square());
        let mut acc = S::zero();
        for i in 0..self.rows {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Solves `self * x = b` by Gaussian elimination with partial pivoting.
    ///
    /// Pivoting by magnitude is exact for rationals (any nonzero pivot would
    /// do) and numerically sane for floats.
    pub fn solve_vec(&self, b: &Vector<S>) -> Result<Vector<S>, GeomError> {
        let cols = self.solve_mat(&Matrix::from_fn(b.dim(), 1, |i, _| b[i].clone()))?;
        Ok(cols.col(0))
    }

    /// Solves `self * X = B` for a matrix right-hand side.
    pub fn solve_mat(&self, b: &Matrix<S>) -> Result<Matrix<S>, GeomError> {
        assert!(self.is_square(), "solve requires a square matrix");
        assert_eq!(self.rows, b.rows, "right-hand side dimension mismatch");
        let n = self.rows;
        let m = b.cols;
        let mut a = self.clone();
        let mut rhs = b.clone();

        for col in 0..n {
            let mut pivot = col;
            let mut best = a[(col, col)].abs();
            for r in col + 1..n {
                let cand = a[(r, col)].abs();
                if cand > best {
                    best = cand;
                    pivot = r;
                }
            }
            if a[(pivot, col)].is_zero() {
                return Err(GeomError::SingularMatrix);
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                }
                for j in 0..m {
                    rhs.data.swap(pivot * m + j, col * m + j);
                }
            }
            let inv = S::one() / a[(col, col)].clone();
            for j in col..n {
                a[(col, j)] = a[(col, j)].clone() * inv.clone();
            }
            for j in 0..m {
                rhs[(col, j)] = rhs[(col, j)].clone() * inv.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in col..n {
                    let t = a[(col, j)].clone() * f.clone();
                    a[(r, j)] = a[(r, j)].clone() - t;
                }
                for j in 0..m {
                    let t = rhs[(col, j)].clone() * f.clone();
                    rhs[(r, j)] = rhs[(r, j)].clone() - t;
                }
            }
        }
        Ok(rhs)
    }

    pub fn inverse(&self) -> Result<Matrix<S>, GeomError> {
        self.solve_mat(&Matrix::identity(self.rows))
    }

    pub fn determinant(&self) -> S {
        assert!(self.is_square(), "determinant requires a square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[(col, col)].abs();
            for r in col + 1..n {
                let cand = a[(r, col)].abs();
                if cand > best {
                    best = cand;
                    pivot = r;
                }
            }
            if a[(pivot, col)].is_zero() {
                return S::zero();
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            det = det * a[(col, col)].clone();
            let inv = S::one() / a[(col, col)].clone();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone() * inv.clone();
                for j in col..n {
                    let t = a[(col, j)].clone() * f.clone();
                    a[(r, j)] = a[(r, j)].clone() - t;
                }
            }
        }
        det
    }

    /// Pfaffian of an antisymmetric matrix, by expansion along the first row.
    ///
    /// Returns zero for odd dimension. `pf(A)^2 = det(A)`.
    pub fn pfaffian(&self) -> S {
        assert!(self.is_square(), "pfaffian requires a square matrix");
        let n = self.rows;
        if n % 2 == 1 {
            return S::zero();
        }
        fn pf_rec<S: Scalar>(m: &Matrix<S>, active: &[usize]) -> S {
            if active.is_empty() {
                return S::one();
            }
            let i = active[0];
            let mut acc = S::zero();
            for (pos, &j) in active.iter().enumerate().skip(1) {
                if m[(i, j)].is_zero() {
                    continue;
                }
                let rest: Vec<usize> = active[1..]
                    .iter()
                    .copied()
                    .filter(|&k| k != j)
                    .collect();
                let term = m[(i, j)].clone() * pf_rec(m, &rest);
                // sign (-1)^{pos-1} from moving column j next to row i
                if pos % 2 == 1 {
                    acc = acc + term;
                } else {
                    acc = acc - term;
                }
            }
            acc
        }
        let active: Vec<usize> = (0..n).collect();
        pf_rec(self, &active)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}
