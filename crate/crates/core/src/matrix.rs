//! Dense matrices over a generic scalar and exact Gaussian elimination.
//!
//! Everything here is written against `num_traits` so the same code runs on
//! machine integers, exact rationals (`Ratio<i64>`, `Ratio<i128>`, ...) and,
//! where rounding is acceptable, on floats.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Scalars closed under the four field operations.
pub trait FieldScalar: Clone + PartialEq + Num + fmt::Debug {}

impl<T: Clone + PartialEq + Num + fmt::Debug> FieldScalar for T {}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
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

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone + Num> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.clone() * rhs[(k, j)].clone();
                    let cell: &mut T = &mut out[(i, j)];
                    *cell = cell.clone() + prod;
                }
            }
        }
        out
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.rows {
            list.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        list.finish()
    }
}

pub fn dot<T: Clone + Num>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Lifts an integer matrix to exact rationals.
pub fn to_ratio<I: Clone + Integer>(m: &Matrix<I>) -> Matrix<Ratio<I>> {
    m.map(|x| Ratio::from_integer(x.clone()))
}

/// Row-reduces `[a | b]` and returns the unique solution of `a x = b`,
/// or `None` when `a` is singular.
pub fn solve<T: FieldScalar>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "solve needs a square matrix");
    assert_eq!(n, b.len(), "right-hand side length mismatch");
    let rhs = Matrix::from_fn(n, 1, |i, _| b[i].clone());
    solve_many(a, &rhs).map(|x| x.column(0))
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse<T: FieldScalar>(a: &Matrix<T>) -> Option<Matrix<T>> {
    solve_many(a, &Matrix::identity(a.rows()))
}

fn solve_many<T: FieldScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.rows();
    let m = b.cols();
    let mut lhs = a.clone();
    let mut rhs = b.clone();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !lhs[(r, col)].is_zero())?;
        if pivot != col {
            for j in 0..n {
                lhs.data.swap(pivot * n + j, col * n + j);
            }
            for j in 0..m {
                rhs.data.swap(pivot * m + j, col * m + j);
            }
        }
        let p = lhs[(col, col)].clone();
        for j in 0..n {
            lhs[(col, j)] = lhs[(col, j)].clone() / p.clone();
        }
        for j in 0..m {
            rhs[(col, j)] = rhs[(col, j)].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || lhs[(r, col)].is_zero() {
                continue;
            }
            let factor = lhs[(r, col)].clone();
            for j in 0..n {
                let sub = factor.clone() * lhs[(col, j)].clone();
                lhs[(r, j)] = lhs[(r, j)].clone() - sub;
            }
            for j in 0..m {
                let sub = factor.clone() * rhs[(col, j)].clone();
                rhs[(r, j)] = rhs[(r, j)].clone() - sub;
            }
        }
    }
    Some(rhs)
}

/// Determinant by Gaussian elimination over a field.
pub fn determinant<T: FieldScalar>(a: &Matrix<T>) -> T {
    let n = a.rows();
    assert_eq!(n, a.cols(), "determinant needs a square matrix");
    let mut m = a.clone();
    let mut det = T::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
            return T::zero();
        };
        if pivot != col {
            for j in 0..n {
                m.data.swap(pivot * n + j, col * n + j);
            }
            det = T::zero() - det;
        }
        let p = m[(col, col)].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if m[(r, col)].is_zero() {
                continue;
            }
            let factor = m[(r, col)].clone() / p.clone();
            for j in col..n {
                let sub = factor.clone() * m[(col, j)].clone();
                m[(r, j)] = m[(r, j)].clone() - sub;
            }
        }
    }
    det
}

/// Converts a rational matrix to integers, if every entry is integral.
pub fn to_integer<I: Clone + Integer + Signed>(m: &Matrix<Ratio<I>>) -> Option<Matrix<I>> {
    if m.data.iter().all(Ratio::is_integer) {
        Some(m.map(|x| x.to_integer()))
    } else {
        None
    }
}
